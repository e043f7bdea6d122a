#include "cfx/clifford.hpp"

#include <bit>
#include <cctype>
#include <ostream>
#include <sstream>

namespace cfx {

void CliffordElement::check_rank(int rank) {
    if (rank < 0 || rank > 3) fail(errc::usage, "Clifford rank must be 0..3");
}

CliffordElement CliffordElement::basis(int rank, unsigned blade) {
    CliffordElement e(rank);
    if (blade >= static_cast<unsigned>(1 << rank)) fail(errc::usage, "blade outside algebra rank");
    e.c_[blade] = QuadExt(1);
    return e;
}

CliffordElement CliffordElement::vector(int rank, const std::vector<QuadExt>& coords) {
    CliffordElement e(rank);
    if (coords.size() != static_cast<size_t>(rank + 1))
        fail(errc::usage, "vector coordinate count does not match rank+1");
    e.c_[0] = coords[0];
    for (int i = 0; i < rank; ++i) e.c_[1u << i] = coords[i + 1];
    return e;
}

void CliffordElement::set_coeff(unsigned blade, const QuadExt& v) {
    if (blade >= static_cast<unsigned>(blade_count())) fail(errc::usage, "blade outside algebra rank");
    c_[blade] = v;
}

bool CliffordElement::is_zero() const {
    for (int b = 0; b < blade_count(); ++b)
        if (!c_[b].is_zero()) return false;
    return true;
}

bool CliffordElement::is_scalar() const {
    for (int b = 1; b < blade_count(); ++b)
        if (!c_[b].is_zero()) return false;
    return true;
}

bool CliffordElement::is_vector() const {
    for (int b = 0; b < blade_count(); ++b)
        if (std::popcount(static_cast<unsigned>(b)) > 1 && !c_[b].is_zero()) return false;
    return true;
}

std::vector<QuadExt> CliffordElement::vector_coords() const {
    std::vector<QuadExt> out;
    out.push_back(c_[0]);
    for (int i = 0; i < rank_; ++i) out.push_back(c_[1u << i]);
    return out;
}

bool CliffordElement::operator==(const CliffordElement& o) const {
    if (rank_ != o.rank_) return false;
    for (int b = 0; b < blade_count(); ++b)
        if (c_[b] != o.c_[b]) return false;
    return true;
}

CliffordElement CliffordElement::operator+(const CliffordElement& o) const {
    if (rank_ != o.rank_) fail(errc::usage, "rank mismatch");
    CliffordElement r(rank_);
    for (int b = 0; b < blade_count(); ++b) r.c_[b] = c_[b] + o.c_[b];
    return r;
}

CliffordElement CliffordElement::operator-(const CliffordElement& o) const {
    if (rank_ != o.rank_) fail(errc::usage, "rank mismatch");
    CliffordElement r(rank_);
    for (int b = 0; b < blade_count(); ++b) r.c_[b] = c_[b] - o.c_[b];
    return r;
}

CliffordElement CliffordElement::operator-() const {
    CliffordElement r(rank_);
    for (int b = 0; b < blade_count(); ++b) r.c_[b] = -c_[b];
    return r;
}

int CliffordElement::blade_sign(unsigned I, unsigned J) {
    int sign = 1;
    unsigned acc = I;
    for (unsigned bit = 0; bit < 4; ++bit) {
        if (!(J & (1u << bit))) continue;
        // e_bit commutes past the generators of acc with index > bit
        unsigned higher = acc >> (bit + 1);
        if (std::popcount(higher) & 1) sign = -sign;
        if (acc & (1u << bit)) {
            sign = -sign; // e_bit^2 = -1
            acc &= ~(1u << bit);
        } else {
            acc |= (1u << bit);
        }
    }
    return sign;
}

CliffordElement CliffordElement::operator*(const CliffordElement& o) const {
    if (rank_ != o.rank_) fail(errc::usage, "rank mismatch");
    CliffordElement r(rank_);
    for (int i = 0; i < blade_count(); ++i) {
        if (c_[i].is_zero()) continue;
        for (int j = 0; j < blade_count(); ++j) {
            if (o.c_[j].is_zero()) continue;
            int s = blade_sign(i, j);
            QuadExt term = c_[i] * o.c_[j];
            unsigned blade = static_cast<unsigned>(i) ^ static_cast<unsigned>(j);
            r.c_[blade] = (s > 0) ? (r.c_[blade] + term) : (r.c_[blade] - term);
        }
    }
    return r;
}

CliffordElement CliffordElement::scaled(const QuadExt& s) const {
    CliffordElement r(rank_);
    for (int b = 0; b < blade_count(); ++b) r.c_[b] = c_[b] * s;
    return r;
}

CliffordElement CliffordElement::involution() const {
    CliffordElement r(rank_);
    for (int b = 0; b < blade_count(); ++b) {
        int k = std::popcount(static_cast<unsigned>(b));
        r.c_[b] = (k & 1) ? -c_[b] : c_[b];
    }
    return r;
}

CliffordElement CliffordElement::reversion() const {
    CliffordElement r(rank_);
    for (int b = 0; b < blade_count(); ++b) {
        int k = std::popcount(static_cast<unsigned>(b));
        bool flip = ((k * (k - 1)) / 2) & 1;
        r.c_[b] = flip ? -c_[b] : c_[b];
    }
    return r;
}

CliffordElement CliffordElement::conjugate() const {
    return involution().reversion();
}

std::optional<QuadExt> CliffordElement::norm_sq_if_scalar() const {
    CliffordElement p = (*this) * conjugate();
    if (!p.is_scalar()) return std::nullopt;
    return p.coeff(0);
}

QuadExt CliffordElement::norm_sq() const {
    auto n = norm_sq_if_scalar();
    if (!n)
        fail(errc::not_scalar_norm, "x*conj(x) is not scalar: " + str());
    return *n;
}

CliffordElement CliffordElement::inverse() const {
    QuadExt n = norm_sq();
    if (n.is_zero()) fail(errc::division_by_zero, "inverse of zero Clifford element");
    return conjugate().scaled(n.inverse());
}

namespace {

std::string blade_name(unsigned blade, int rank, bool quaternion_names) {
    if (blade == 0) return "";
    if (quaternion_names && rank == 2) {
        switch (blade) {
            case 1: return "i";
            case 2: return "j";
            case 3: return "k";
        }
    }
    std::string s = "e";
    for (unsigned bit = 0; bit < 4; ++bit)
        if (blade & (1u << bit)) s += static_cast<char>('1' + bit);
    return s;
}

} // namespace

std::string CliffordElement::str(bool quaternion_names) const {
    std::ostringstream os;
    bool wrote = false;
    for (int b = 0; b < blade_count(); ++b) {
        if (c_[b].is_zero()) continue;
        std::string coef = c_[b].str();
        bool neg = !coef.empty() && coef[0] == '-';
        if (wrote) os << (neg ? "-" : "+");
        else if (neg) os << "-";
        std::string body = neg ? coef.substr(1) : coef;
        std::string name = blade_name(static_cast<unsigned>(b), rank_, quaternion_names);
        if (name.empty())
            os << body;
        else if (body == "1")
            os << name;
        else {
            // wrap composite scalars so the blade text re-parses
            bool composite = body.find_first_of("+-") != std::string::npos;
            os << (composite ? "(" + body + ")" : body) << "*" << name;
        }
        wrote = true;
    }
    if (!wrote) return "0";
    return os.str();
}

std::array<double, 8> CliffordElement::approx() const {
    std::array<double, 8> a{};
    for (int b = 0; b < blade_count(); ++b) a[b] = c_[b].approx();
    return a;
}

bool CliffordElement::key_less(const CliffordElement& a, const CliffordElement& b) {
    if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
    for (int i = 0; i < a.blade_count(); ++i) {
        if (a.c_[i] != b.c_[i]) return QuadExt::key_less(a.c_[i], b.c_[i]);
    }
    return false;
}

std::ostream& operator<<(std::ostream& os, const CliffordElement& x) {
    return os << x.str();
}

CliffordElement hurwitz_h() {
    CliffordElement h(3);
    Rational half(1, 2);
    h.set_coeff(0, QuadExt(half));
    h.set_coeff(1, QuadExt(half));
    h.set_coeff(2, QuadExt(half));
    h.set_coeff(4, QuadExt(half));
    return h;
}

namespace {

// Recursive-descent parser for blade expressions with +, -, *, /, parens,
// numbers, sqrt(), and basis names e1..e123 / i j k.
struct CliffordParser {
    const std::string& s;
    int rank;
    size_t i = 0;

    CliffordParser(const std::string& text, int r) : s(text), rank(r) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool peek(char c) {
        skip_ws();
        return i < s.size() && s[i] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++i;
            return true;
        }
        return false;
    }

    CliffordElement parse_expr() {
        CliffordElement acc = parse_product();
        for (;;) {
            skip_ws();
            if (eat('+'))
                acc = acc + parse_product();
            else if (eat('-'))
                acc = acc - parse_product();
            else
                break;
        }
        return acc;
    }

    CliffordElement parse_product() {
        CliffordElement acc = parse_atom();
        for (;;) {
            skip_ws();
            if (eat('*')) {
                acc = acc * parse_atom();
                continue;
            }
            if (eat('/')) {
                CliffordElement div = parse_atom();
                if (!div.is_scalar()) fail(errc::parse_error, "division by non-scalar in '" + s + "'");
                if (div.coeff(0).is_zero()) fail(errc::division_by_zero, "division by zero in '" + s + "'");
                acc = acc.scaled(div.coeff(0).inverse());
                continue;
            }
            // implicit product: "2i", "3e1", ")("
            skip_ws();
            if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '(')) {
                acc = acc * parse_atom();
                continue;
            }
            break;
        }
        return acc;
    }

    CliffordElement parse_atom() {
        skip_ws();
        if (i >= s.size()) fail(errc::parse_error, "unexpected end of '" + s + "'");
        if (eat('-')) return -parse_atom();
        if (eat('+')) return parse_atom();
        if (eat('(')) {
            CliffordElement e = parse_expr();
            if (!eat(')')) fail(errc::parse_error, "expected ')' in '" + s + "'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            size_t start = i;
            while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'))
                ++i;
            std::string numtext = s.substr(start, i - start);
            if (numtext.find('.') != std::string::npos)
                fail(errc::parse_error, "decimal literals are not exact; use p/q in '" + s + "'");
            return CliffordElement(rank, QuadExt(Rational(Int(numtext))));
        }
        if (s.compare(i, 4, "sqrt") == 0) {
            i += 4;
            if (!eat('(')) fail(errc::parse_error, "expected '(' after sqrt");
            skip_ws();
            size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (start == i) fail(errc::parse_error, "expected integer radicand in '" + s + "'");
            Int radicand(s.substr(start, i - start));
            if (!eat(')')) fail(errc::parse_error, "expected ')' after sqrt");
            return CliffordElement(rank, QuadExt(Rational(0), Rational(1), radicand));
        }
        char c = s[i];
        if (c == 'i' || c == 'j' || c == 'k') {
            ++i;
            unsigned blade = (c == 'i') ? 1u : (c == 'j') ? 2u : 3u;
            if (rank < 2 && blade > 1u)
                fail(errc::parse_error, "quaternion unit outside algebra rank in '" + s + "'");
            if (rank < 1) fail(errc::parse_error, "imaginary unit in a scalar-only algebra");
            return CliffordElement::basis(rank, blade);
        }
        if (c == 'e') {
            ++i;
            unsigned blade = 0;
            bool any = false;
            while (i < s.size() && s[i] >= '1' && s[i] <= '3') {
                blade |= 1u << (s[i] - '1');
                ++i;
                any = true;
            }
            if (!any) fail(errc::parse_error, "expected index after 'e' in '" + s + "'");
            if (blade >= static_cast<unsigned>(1 << rank))
                fail(errc::parse_error, "basis blade outside algebra rank in '" + s + "'");
            return CliffordElement::basis(rank, blade);
        }
        fail(errc::parse_error, "unexpected character '" + std::string(1, c) + "' in '" + s + "'");
    }

    CliffordElement parse() {
        CliffordElement e = parse_expr();
        skip_ws();
        if (i != s.size()) fail(errc::parse_error, "trailing input in '" + s + "'");
        return e;
    }
};

} // namespace

CliffordElement parse_clifford(const std::string& text, int rank) {
    CliffordParser p(text, rank);
    return p.parse();
}

} // namespace cfx
