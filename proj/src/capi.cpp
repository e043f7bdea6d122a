#include "cfx.h"

#include <functional>
#include <sstream>

#include "cfx/json_io.hpp"
#include "cfx/selfcheck.hpp"

using nlohmann::json;

struct cfx_result {
    std::string json_text;
    std::string text;
    std::string error;
    cfx_status status = CFX_OK;
};

namespace {

cfx_status finish(cfx_result** out, cfx_result* r) {
    if (out)
        *out = r;
    else
        delete r;
    return r->status;
}

cfx_status run_guarded(cfx_result** out, const std::function<void(cfx_result&)>& body) {
    auto* r = new cfx_result;
    try {
        body(*r);
    } catch (const cfx::domain_error& e) {
        r->error = std::string(cfx::errc_name(e.code())) + ": " + e.what();
        r->status = e.code() == cfx::errc::usage || e.code() == cfx::errc::parse_error
                        ? CFX_ERR_USAGE
                        : cfx::is_budget_error(e.code()) ? CFX_ERR_BUDGET : CFX_ERR_DOMAIN;
    } catch (const std::exception& e) {
        r->error = std::string("Internal: ") + e.what();
        r->status = CFX_ERR_INTERNAL;
    }
    return finish(out, r);
}

cfx::Space make_space(const char* space, const char* variant, long imaginary_d) {
    std::string s = space ? space : "";
    std::string v = variant ? variant : "";
    if (s == "real") {
        if (!v.empty() && v != "nearest" && v != "regular")
            cfx::fail(cfx::errc::usage, "variant must be nearest or regular");
        return cfx::Space::real(v != "regular");
    }
    if (s == "complex") return cfx::Space::complex(imaginary_d > 0 ? cfx::Int(imaginary_d) : cfx::Int(1));
    if (s == "r3") return cfx::Space::r3();
    if (s == "r4-hurwitz") return cfx::Space::r4_hurwitz();
    if (s == "heisenberg") return cfx::Space::heisenberg();
    cfx::fail(cfx::errc::usage, "unknown space '" + s + "'");
}

int ring_rank(const std::string& ring) {
    if (ring == "quat" || ring == "r3") return 2;
    if (ring == "r4-hurwitz") return 3;
    cfx::fail(cfx::errc::usage, "unknown Clifford ring '" + ring + "'");
}

// Complex surd points: "sqrt(<gaussian integer>)" over Z[i*sqrt(d)].
bool try_parse_complex_surd(const std::string& text, const cfx::Int& d, cfx::ComplexSurd* out) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.rfind("sqrt(", 0) != 0 || t.back() != ')') return false;
    std::string inner = t.substr(5, t.size() - 6);
    cfx::GaussRational delta = cfx::parse_gauss(inner, d);
    if (cfx::den(delta.x) != 1 || cfx::den(delta.y) != 1)
        cfx::fail(cfx::errc::usage, "surd radicand must be a lattice integer");
    *out = cfx::cs_make({0, 0}, {1, 0}, delta, d);
    return true;
}

void attach(cfx_result& r, json j, const std::string& text) {
    r.json_text = cfx::json_dump(j);
    r.text = text;
}

std::string render_expansion(const cfx::Space& space, const cfx::Expansion& e) {
    std::ostringstream os;
    os << "status: "
       << (e.status == cfx::ExpStatus::finite     ? "finite"
           : e.status == cfx::ExpStatus::periodic ? "periodic"
                                                  : "truncated")
       << "\n";
    os << "digits:";
    for (long i = 0; i < static_cast<long>(e.digits.size()); ++i) {
        if (e.status == cfx::ExpStatus::periodic && i == e.preperiod) os << " |";
        os << " " << space.lattice_to_string(e.digits[i]);
    }
    os << "\n";
    if (e.status == cfx::ExpStatus::periodic)
        os << "preperiod: " << e.preperiod << ", period: " << e.period << "\n";
    return os.str();
}

} // namespace

extern "C" {

const char* cfx_version(void) { return "1.0.0"; }

const char* cfx_result_json(const cfx_result* r) {
    return r && !r->json_text.empty() ? r->json_text.c_str() : nullptr;
}
const char* cfx_result_text(const cfx_result* r) {
    return r && !r->text.empty() ? r->text.c_str() : nullptr;
}
const char* cfx_result_error(const cfx_result* r) {
    return r && !r->error.empty() ? r->error.c_str() : nullptr;
}
void cfx_result_free(cfx_result* r) { delete r; }

cfx_status cfx_expand(const char* space, const char* variant, long imaginary_d,
                      const char* point, long max_iter, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        if (!point) cfx::fail(cfx::errc::usage, "missing point");
        cfx::Space sp = make_space(space, variant, imaginary_d);
        long budget = max_iter > 0 ? max_iter : cfx::kDefaultMaxIter;
        cfx::Expansion e;
        cfx::ComplexSurd z;
        if (sp.kind() == cfx::SpaceKind::complex_plane &&
            try_parse_complex_surd(point, sp.imag_d(), &z)) {
            if (z.delta.y == 0) {
                // real radicand: the point lives in a real quadratic tower
                cfx::Rational a = z.delta.x;
                cfx::Point p =
                    a >= 0 ? sp.make_point({cfx::QuadExt::sqrt_of(a), cfx::QuadExt(0)})
                           : sp.make_point({cfx::QuadExt(0), cfx::QuadExt::sqrt_of(-a)});
                e = cfx::expand(sp, p, budget);
            } else {
                e = cfx::expand_complex_surd(z, budget);
            }
        } else {
            e = cfx::expand(sp, sp.parse_point(point), budget);
        }
        json j = cfx::expansion_to_json(sp, e);
        j["paper_ref"] = "Euler-Lagrange correspondence: finite <-> parabolic fixed point, "
                         "eventually periodic <-> loxodromic fixed point";
        attach(r, j, render_expansion(sp, e));
        if (e.status == cfx::ExpStatus::truncated) {
            r.status = CFX_ERR_BUDGET;
            r.error = "NotFoundWithinBound: expansion truncated at " +
                      std::to_string(e.iterations) + " iterations";
        }
    });
}

cfx_status cfx_evaluate(const char* space, const char* variant, long imaginary_d,
                        const char* digits_json, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        if (!digits_json) cfx::fail(cfx::errc::usage, "missing digits");
        cfx::Space sp = make_space(space, variant, imaginary_d);
        json in = json::parse(digits_json, nullptr, false);
        if (in.is_discarded()) cfx::fail(cfx::errc::parse_error, "digits are not valid JSON");
        cfx::Expansion e;
        if (in.is_array()) {
            for (const auto& d : in) e.digits.push_back(sp.parse_lattice(d.get<std::string>()));
            e.status = cfx::ExpStatus::finite;
            e.preperiod = static_cast<long>(e.digits.size());
        } else {
            e = cfx::expansion_from_json(sp, in);
        }
        cfx::EvalResult v =
            cfx::evaluate(sp, e.digits, e.has_leading,
                          e.status == cfx::ExpStatus::periodic ? e.period : 0);
        json j = cfx::eval_to_json(sp, v);
        j["paper_ref"] = "continued fraction value as an orbit of translations and inversions";
        std::ostringstream os;
        if (v.infinity)
            os << "value: infinity\n";
        else if (v.exact)
            os << "value: " << sp.point_to_string(*v.exact) << "\n";
        else if (v.surd)
            os << "value: " << cfx::cs_to_string(*v.surd) << "\n";
        else {
            os << "value_approx: (";
            for (size_t i = 0; i < v.approx.size(); ++i) os << (i ? ", " : "") << v.approx[i];
            os << ")\n";
        }
        attach(r, j, os.str());
    });
}

cfx_status cfx_classify(const char* ring, long imaginary_d, const char* matrix,
                        cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        if (!ring || !matrix) cfx::fail(cfx::errc::usage, "missing ring or matrix");
        std::string rg = ring;
        cfx::Classification cls;
        if (rg == "z") {
            cfx::CliffordMatrix m = cfx::parse_matrix(matrix, 0);
            cfx::IntMat2 im;
            auto cell = [&](const cfx::CliffordElement& e) {
                cfx::QuadExt q = e.coeff(0);
                if (!q.is_rational() || cfx::den(q.a()) != 1)
                    cfx::fail(cfx::errc::usage, "integer matrix expected");
                return cfx::num(q.a());
            };
            im[0][0] = cell(m.a);
            im[0][1] = cell(m.b);
            im[1][0] = cell(m.c);
            im[1][1] = cell(m.d);
            cls = cfx::classify_real(im);
        } else if (rg == "zi" || rg == "zid") {
            cfx::Int d = rg == "zi" ? 1 : imaginary_d;
            if (d < 1) cfx::fail(cfx::errc::usage, "zid needs imaginary_d >= 1");
            cfx::GaussMat2 gm = [&] {
                // reuse the bracket splitter from the Clifford parser via rank 1
                cfx::CliffordMatrix m = cfx::parse_matrix(matrix, 1);
                auto cell = [&](const cfx::CliffordElement& e) {
                    return cfx::GaussRational(e.coeff(0).a(), e.coeff(1).a());
                };
                return cfx::GaussMat2{cell(m.a), cell(m.b), cell(m.c), cell(m.d)};
            }();
            cls = cfx::classify_complex(gm, d);
        } else if (rg == "quat") {
            cls = cfx::classify_quaternionic(cfx::parse_matrix(matrix, 2));
        } else {
            cfx::fail(cfx::errc::usage, "ring must be z, zi, zid or quat");
        }
        json j = cfx::classification_to_json(cls);
        j["paper_ref"] = rg == "quat" ? "Parker-Short conjugacy classification"
                                      : "trace classification of SL(2) isometries";
        std::ostringstream os;
        os << "kind: " << cfx::iso_kind_name(cls.kind);
        if (cls.simplicity) os << " (" << cls.simplicity << "-simple)";
        os << "\n";
        for (const auto& [k, v] : cls.certificate) os << k << ": " << v << "\n";
        attach(r, j, os.str());
    });
}

cfx_status cfx_validate_matrix(const char* ring, const char* matrix, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        if (!ring || !matrix) cfx::fail(cfx::errc::usage, "missing ring or matrix");
        cfx::CliffordMatrix m = cfx::parse_matrix(matrix, ring_rank(ring));
        cfx::ValidationReport rep = cfx::cm_validate(m);
        json j = cfx::validation_to_json(rep);
        j["schema"] = cfx::kSchema;
        j["paper_ref"] = "Vahlen matrix conditions";
        attach(r, j, std::string(rep.valid() ? "valid" : "invalid") +
                         (rep.failure.empty() ? "" : (": " + rep.failure)) + "\n");
    });
}

cfx_status cfx_reduce(const char* ring, const char* matrix, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        if (!ring || !matrix) cfx::fail(cfx::errc::usage, "missing ring or matrix");
        std::string rg = ring;
        cfx::Space sp = rg == "r4-hurwitz" ? cfx::Space::r4_hurwitz() : cfx::Space::r3();
        if (rg != "r3" && rg != "r4-hurwitz")
            cfx::fail(cfx::errc::usage, "ring must be r3 or r4-hurwitz");
        cfx::CliffordMatrix m = cfx::parse_matrix(matrix, sp.matrix_rank());
        cfx::ReduceResult red = cfx::reduce_to_generators(sp, m);
        cfx::CliffordMatrix back = cfx::word_product(sp, red.word);
        json j;
        j["schema"] = cfx::kSchema;
        j["paper_ref"] = "norm-descent reduction to translation and inversion generators";
        json toks = json::array();
        for (const auto& t : red.word.tokens) {
            if (t.inv)
                toks.push_back("Inv");
            else
                toks.push_back("T(" + sp.lattice_to_string(t.trans) + ")");
        }
        j["word"] = toks;
        j["tokens"] = static_cast<long>(red.word.tokens.size());
        j["product_matches"] = back == m;
        attach(r, j, red.word.str(sp) + "\n");
    });
}

cfx_status cfx_pell(long long delta, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        cfx::PellSolution s = cfx::pell_solve(cfx::Int(delta));
        json j;
        j["schema"] = cfx::kSchema;
        j["paper_ref"] = "Pell equation fundamental solution";
        j["delta"] = delta;
        j["mu"] = s.mu.str();
        j["n"] = s.n.str();
        j["identity"] = "mu^2*delta + 1 = n^2";
        attach(r, j, "mu = " + s.mu.str() + ", n = " + s.n.str() + "\n");
    });
}

cfx_status cfx_surd_to_matrix(long long a, long long b, long long c, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        cfx::IntMat2 m = cfx::surd_to_loxodromic(cfx::Int(a), cfx::Int(b), cfx::Int(c));
        json j;
        j["schema"] = cfx::kSchema;
        j["paper_ref"] = "quadratic surds are fixed points of loxodromic matrices";
        j["matrix"] = json::array({json::array({m[0][0].str(), m[0][1].str()}),
                                   json::array({m[1][0].str(), m[1][1].str()})});
        j["trace"] = cfx::Int(m[0][0] + m[1][1]).str();
        std::ostringstream os;
        os << "[[" << m[0][0] << "," << m[0][1] << "],[" << m[1][0] << "," << m[1][1] << "]]\n";
        attach(r, j, os.str());
    });
}

cfx_status cfx_complex_pell(const char* delta, long imaginary_d, long bound, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        if (!delta) cfx::fail(cfx::errc::usage, "missing delta");
        cfx::Int d = imaginary_d > 0 ? imaginary_d : 1;
        cfx::GaussRational dl = cfx::parse_gauss(delta, d);
        long b = bound > 0 ? bound : 50;
        auto res = cfx::complex_pell_search(dl, d, b);
        json j;
        j["schema"] = cfx::kSchema;
        j["paper_ref"] = "Pell equation over Z[i*sqrt(d)] (existence without effective bounds)";
        j["convention"] = "x^2 + delta*y^2 = 1";
        if (!res) {
            j["found"] = false;
            attach(r, j, "no solution within bound " + std::to_string(b) + "\n");
            r.status = CFX_ERR_BUDGET;
            r.error = "NotFoundWithinBound: no solution with coefficients up to " +
                      std::to_string(b);
            return;
        }
        j["found"] = true;
        j["x"] = cfx::gauss_to_string(res->x, d);
        j["y"] = cfx::gauss_to_string(res->y, d);
        attach(r, j, "x = " + cfx::gauss_to_string(res->x, d) +
                         ", y = " + cfx::gauss_to_string(res->y, d) + "\n");
    });
}

cfx_status cfx_fixed_points(const char* ring, long imaginary_d, const char* matrix,
                            unsigned long seed, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        if (!ring || !matrix) cfx::fail(cfx::errc::usage, "missing ring or matrix");
        std::string rg = ring;
        json j;
        j["schema"] = cfx::kSchema;
        j["paper_ref"] = "fixed points solve C x^2 + (D - A) x - B = 0";
        std::ostringstream os;
        if (rg == "z") {
            cfx::CliffordMatrix m0 = cfx::parse_matrix(matrix, 0);
            cfx::IntMat2 im;
            auto cell = [&](const cfx::CliffordElement& e) { return cfx::num(e.coeff(0).a()); };
            im[0][0] = cell(m0.a);
            im[0][1] = cell(m0.b);
            im[1][0] = cell(m0.c);
            im[1][1] = cell(m0.d);
            cfx::RealFixedPoints fp = cfx::fixed_points_real(im);
            json pts = json::array();
            if (fp.includes_infinity) pts.push_back("infinity");
            for (const auto& p : fp.points) pts.push_back(p.str());
            j["points"] = pts;
            for (const auto& p : pts) os << p.get<std::string>() << "\n";
        } else if (rg == "zi" || rg == "zid") {
            cfx::Int d = rg == "zi" ? 1 : imaginary_d;
            cfx::CliffordMatrix m1 = cfx::parse_matrix(matrix, 1);
            auto cell = [&](const cfx::CliffordElement& e) {
                return cfx::GaussRational(e.coeff(0).a(), e.coeff(1).a());
            };
            cfx::GaussMat2 gm{cell(m1.a), cell(m1.b), cell(m1.c), cell(m1.d)};
            cfx::ComplexFixedPoints fp = cfx::fixed_points_complex(gm, d);
            json pts = json::array();
            if (fp.includes_infinity) pts.push_back("infinity");
            for (const auto& p : fp.points) pts.push_back(cfx::cs_to_string(p));
            j["points"] = pts;
            for (const auto& p : pts) os << p.get<std::string>() << "\n";
        } else if (rg == "quat") {
            cfx::CliffordMatrix m = cfx::parse_matrix(matrix, 2);
            cfx::CliffordFixedPoints fp =
                cfx::fixed_points_clifford(m, static_cast<unsigned>(seed ? seed : 7));
            json pts = json::array();
            if (fp.includes_infinity) pts.push_back("infinity");
            for (const auto& p : fp.points) pts.push_back(p);
            j["points_approx"] = pts;
            j["seed_agreement"] = fp.seed_agreement;
            os << "fixed points (approx):\n" << pts.dump() << "\n";
        } else {
            cfx::fail(cfx::errc::usage, "ring must be z, zi, zid or quat");
        }
        attach(r, j, os.str());
    });
}

cfx_status cfx_horoball_trace(const char* space, const char* variant, long imaginary_d,
                              const char* point, long max_iter, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        if (!point) cfx::fail(cfx::errc::usage, "missing point");
        cfx::Space sp = make_space(space, variant, imaginary_d);
        cfx::HoroballTrace t = cfx::track_horoball(
            sp, sp.parse_point(point), 1, max_iter > 0 ? max_iter : cfx::kDefaultMaxIter);
        json j = cfx::trace_to_json(sp, t);
        j["paper_ref"] = "horoball height growth certifies finite expansions of rational points";
        std::ostringstream os;
        os << (t.finite ? "finite" : "truncated") << " after " << t.iterations
           << " steps; certificate " << (t.certificate_ok ? "ok" : "VIOLATED") << "\n";
        attach(r, j, os.str());
        if (!t.finite) {
            r.status = CFX_ERR_BUDGET;
            r.error = "NotFoundWithinBound: trace truncated";
        }
    });
}

cfx_status cfx_geodesic_min_height(const char* space, double eps, double eps_prime, int grid,
                                   cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        cfx::Space sp = make_space(space ? space : "real", nullptr, 1);
        cfx::GeodesicMinHeight g = cfx::geodesic_sphere_min_height(sp, eps, eps_prime, grid);
        json j = cfx::geodesic_to_json(g);
        j["paper_ref"] = "widely-spaced geodesics cross the gauge sphere at bounded height";
        std::ostringstream os;
        os << "min height " << g.min_height << " over " << g.pairs << " endpoint pairs\n";
        attach(r, j, os.str());
    });
}

cfx_status cfx_identities(int d, long steps, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        json j;
        j["schema"] = cfx::kSchema;
        std::ostringstream os;
        if (d >= 2 && d <= 4) {
            cfx::DepthIdentityRecord rec = cfx::check_depth_identity(d);
            j["paper_ref"] = "reciprocal-tower identities in dimensions 2, 3, 4";
            j["d"] = rec.d;
            j["depth"] = rec.depth;
            j["variants_checked"] = rec.variants_checked;
            j["all_zero"] = rec.all_zero;
            if (!rec.witness.empty()) j["witness"] = rec.witness;
            os << "d=" << d << ": " << rec.variants_checked << " variants, "
               << (rec.all_zero ? "all exactly zero" : ("FAILED: " + rec.witness)) << "\n";
        } else {
            long n = steps > 0 ? steps : 100;
            cfx::DepthSequence seq = cfx::depth_sequence(d, n);
            cfx::RecurrenceFixedPoints fx = cfx::fixed_points_x(d);
            j["paper_ref"] = "obstruction recurrence rules out reciprocal-tower identities for d > 4";
            j["d"] = d;
            j["x_minus"] = fx.lo.str();
            j["x_plus"] = fx.hi.str();
            json vals = json::array();
            for (const auto& v : seq.values) vals.push_back(cfx::rational_to_string(v));
            j["values"] = vals;
            os << "d=" << d << ": x_1.." << "x_" << n << " nonzero; fixed points " << fx.lo.str()
               << ", " << fx.hi.str() << "\n";
        }
        attach(r, j, os.str());
    });
}

cfx_status cfx_properness(const char* space, const char* variant, long imaginary_d,
                          long lattice_scale, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        cfx::Space sp = [&] {
            std::string s = space ? space : "";
            if (s == "real" && lattice_scale > 1)
                return cfx::Space::real(!variant || std::string(variant) != "regular",
                                        cfx::Int(lattice_scale));
            return make_space(space, variant, imaginary_d);
        }();
        cfx::PropernessReport rep = sp.is_proper();
        json j = cfx::properness_to_json(rep);
        j["schema"] = cfx::kSchema;
        j["space"] = sp.name();
        j["paper_ref"] = "properness: rad(K) < 1 makes the inversion uniformly expanding";
        std::ostringstream os;
        os << "rad(K)^4 = " << cfx::rational_to_string(rep.rad4) << " ("
           << (rep.proper ? "proper" : "NOT proper") << ")\n";
        if (!rep.warning.empty()) os << "warning: " << rep.warning << "\n";
        attach(r, j, os.str());
    });
}

cfx_status cfx_selfcheck(int quick, unsigned long seed, cfx_result** out) {
    return run_guarded(out, [&](cfx_result& r) {
        cfx::SelfcheckReport rep =
            cfx::run_acceptance(quick != 0, static_cast<unsigned>(seed ? seed : 20240501));
        json j;
        j["schema"] = cfx::kSchema;
        j["quick"] = quick != 0;
        json items = json::array();
        std::ostringstream os;
        for (const auto& c : rep.criteria) {
            json it;
            it["id"] = c.id;
            it["name"] = c.name;
            it["pass"] = c.pass;
            it["seconds"] = c.seconds;
            if (!c.detail.empty()) it["detail"] = c.detail;
            items.push_back(it);
            os << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << ": " << c.name;
            if (!c.pass) os << " -- " << c.detail;
            os << " (" << c.seconds << "s)\n";
        }
        j["criteria"] = items;
        j["all_pass"] = rep.all_pass();
        os << (rep.all_pass() ? "all criteria passed" : "SOME CRITERIA FAILED") << "\n";
        attach(r, j, os.str());
        if (!rep.all_pass()) {
            r.status = CFX_ERR_DOMAIN;
            r.error = "selfcheck: some criteria failed";
        }
    });
}

} // extern "C"
