#include "cfx/quadext.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <ostream>
#include <sstream>

namespace cfx {

QuadExt::QuadExt(const Rational& a, const Rational& b, const Int& d) : a_(a), b_(b), d_(d) {
    if (d_ < 0) fail(errc::parse_error, "negative radicand in real quadratic scalar");
    if (b_ == 0 || d_ == 0) {
        if (d_ == 0 && b_ != 0) a_ += 0; // sqrt(0) contributes nothing
        b_ = (d_ == 0) ? Rational(0) : b_;
        if (b_ == 0) d_ = 0;
        return;
    }
    SquarefreeSplit sf = squarefree_split(d_);
    d_ = sf.free_part;
    b_ *= Rational(sf.square_part);
    if (d_ == 1) { // sqrt(1) folds into the rational part
        a_ += b_;
        b_ = 0;
        d_ = 0;
    }
    if (b_ == 0) d_ = 0;
}

QuadExt QuadExt::sqrt_of(const Rational& r) {
    if (r < 0) fail(errc::parse_error, "sqrt of negative rational");
    if (r == 0) return QuadExt();
    // sqrt(p/q) = sqrt(p*q)/q
    Int pq = num(r) * den(r);
    return QuadExt(Rational(0), Rational(1, den(r)), pq);
}

Int QuadExt::merge_radicand(const QuadExt& x, const QuadExt& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0) return x.d_;
    if (x.d_ != y.d_)
        fail(errc::mixed_radicand,
             "cannot combine sqrt(" + x.d_.str() + ") with sqrt(" + y.d_.str() + ")");
    return x.d_;
}

int QuadExt::sign() const {
    if (b_ == 0) return sign_of(a_);
    if (a_ == 0) return sign_of(b_);
    int sa = sign_of(a_), sb = sign_of(b_);
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with b^2*D exactly.
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * Rational(d_);
    if (lhs == rhs) return 0; // only possible when sqrt(D) rational, i.e. never for D>1
    bool a_dominates = lhs > rhs;
    return a_dominates ? sa : sb;
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
    Int d = merge_radicand(*this, o);
    return QuadExt(a_ + o.a_, b_ + o.b_, d, no_reduce{});
}

QuadExt QuadExt::operator-(const QuadExt& o) const {
    Int d = merge_radicand(*this, o);
    return QuadExt(a_ - o.a_, b_ - o.b_, d, no_reduce{});
}

QuadExt QuadExt::operator*(const QuadExt& o) const {
    Int d = merge_radicand(*this, o);
    Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d);
    Rational b = a_ * o.b_ + b_ * o.a_;
    return QuadExt(a, b, d, no_reduce{});
}

QuadExt QuadExt::inverse() const {
    if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
    // 1/(a+b sqrt D) = (a - b sqrt D)/(a^2 - b^2 D)
    Rational n = a_ * a_ - b_ * b_ * Rational(d_);
    if (n == 0) fail(errc::internal, "norm vanished for nonzero quadratic scalar");
    return QuadExt(a_ / n, -b_ / n, d_, no_reduce{});
}

QuadExt QuadExt::operator/(const QuadExt& o) const {
    return *this * o.inverse();
}

Int QuadExt::floor() const {
    if (b_ == 0) return floor_rat(a_);
    Int n = Int(std::floor(approx()));
    // Fix up the floating guess with exact sign tests.
    while ((*this - QuadExt(Rational(n))).sign() < 0) --n;
    while ((*this - QuadExt(Rational(n + 1))).sign() >= 0) ++n;
    return n;
}

Int QuadExt::round_half_open() const {
    return (*this + QuadExt(Rational(1, 2))).floor();
}

double QuadExt::approx() const {
    double v = to_double(a_);
    if (b_ != 0) v += to_double(b_) * std::sqrt(Int(d_).convert_to<double>());
    return v;
}

std::string QuadExt::str() const {
    if (b_ == 0) return rational_to_string(a_);
    std::ostringstream os;
    bool wrote = false;
    if (a_ != 0) {
        os << rational_to_string(a_);
        wrote = true;
    }
    Rational babs = b_ < 0 ? Rational(-b_) : b_;
    if (b_ < 0)
        os << "-";
    else if (wrote)
        os << "+";
    if (babs != 1) os << rational_to_string(babs) << "*";
    os << "sqrt(" << d_.str() << ")";
    return os.str();
}

bool QuadExt::key_less(const QuadExt& x, const QuadExt& y) {
    if (x.d_ != y.d_) return x.d_ < y.d_;
    if (x.a_ != y.a_) return x.a_ < y.a_;
    return x.b_ < y.b_;
}

std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
    return os << x.str();
}

namespace {

// Grammar:  expr := term (('+'|'-') term)* ;  term := signed factor
//           factor := rational ['*' ] [sqrt '(' uint ')'] ['/' uint]
// with implicit multiplication ("2sqrt(3)") allowed.
struct QuadParser {
    std::string s;
    size_t i = 0;

    explicit QuadParser(std::string text) : s(std::move(text)) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool lookahead_word(const char* w) {
        skip_ws();
        size_t n = std::strlen(w);
        return s.compare(i, n, w) == 0;
    }

    Rational parse_unsigned_rational() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail(errc::parse_error, "expected number in '" + s + "'");
        Int numv(s.substr(start, i - start));
        Int denv = 1;
        size_t save = i;
        if (eat('/')) {
            skip_ws();
            size_t dstart = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i == dstart) {
                i = save; // the '/' belongs to an outer construct like sqrt(5)/2
            } else {
                denv = Int(s.substr(dstart, i - dstart));
                if (denv == 0) fail(errc::division_by_zero, "zero denominator in '" + s + "'");
            }
        }
        return Rational(numv, denv);
    }

    QuadExt parse_term() {
        skip_ws();
        int sgn = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sgn = -sgn;
            ++i;
            skip_ws();
        }
        Rational coef(1);
        bool saw_coef = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            coef = parse_unsigned_rational();
            saw_coef = true;
        }
        eat('*');
        QuadExt value(coef);
        if (lookahead_word("sqrt")) {
            i += 4;
            if (!eat('(')) fail(errc::parse_error, "expected '(' after sqrt in '" + s + "'");
            Rational rad = parse_unsigned_rational();
            if (!eat(')')) fail(errc::parse_error, "expected ')' in '" + s + "'");
            value = QuadExt(Rational(0), coef, num(rad)) ;
            if (den(rad) != 1) fail(errc::parse_error, "radicand must be an integer in '" + s + "'");
            if (eat('/')) {
                Rational d = parse_unsigned_rational();
                value = value * QuadExt(Rational(1) / d);
            }
        } else if (!saw_coef) {
            fail(errc::parse_error, "expected scalar term in '" + s + "'");
        }
        if (sgn < 0) value = -value;
        return value;
    }

    QuadExt parse() {
        QuadExt acc = parse_term();
        skip_ws();
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            acc = acc + parse_term();
            skip_ws();
        }
        if (i != s.size()) fail(errc::parse_error, "trailing input in '" + s + "'");
        return acc;
    }
};

std::string normalize_radical_text(std::string t) {
    // Accept the UTF-8 radical sign as an alias for "sqrt".
    const std::string radical = "\xE2\x88\x9A";
    size_t pos;
    while ((pos = t.find(radical)) != std::string::npos) {
        std::string repl = "sqrt";
        size_t arg = pos + radical.size();
        if (arg >= t.size() || t[arg] != '(') {
            // bare radical applied to digits
            size_t end = arg;
            while (end < t.size() && std::isdigit(static_cast<unsigned char>(t[end]))) ++end;
            t = t.substr(0, pos) + "sqrt(" + t.substr(arg, end - arg) + ")" + t.substr(end);
        } else {
            t = t.substr(0, pos) + repl + t.substr(arg);
        }
    }
    return t;
}

} // namespace

QuadExt parse_quadext(const std::string& text) {
    QuadParser p(normalize_radical_text(text));
    return p.parse();
}

} // namespace cfx
