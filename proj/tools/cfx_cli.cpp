// Command-line front end.  Links only the C API; everything crosses the
// boundary as exact strings or JSON documents.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "cfx.h"

namespace {

struct Common {
    std::string format = "text";
    unsigned long seed = 0;
};

int emit(cfx_status st, cfx_result* res, const Common& common) {
    if (res) {
        const char* body = common.format == "json" ? cfx_result_json(res) : cfx_result_text(res);
        if (body) std::cout << body;
        if (const char* err = cfx_result_error(res)) std::cerr << "error: " << err << "\n";
        cfx_result_free(res);
    }
    return static_cast<int>(st);
}

long env_max_iter(long flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("CFX_MAX_ITER")) {
        long v = std::atol(env);
        if (v > 0) return v;
    }
    return 0; // library default
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact continued fractions on inversion spaces (real, complex, r3, "
                 "r4-hurwitz, heisenberg)"};
    app.require_subcommand(1);

    Common common;
    app.add_option("--format", common.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", common.seed, "seed for randomized subcommands");

    std::string space = "real", variant, point, matrix, ring = "z", digits, delta_text,
                quadratic, lattice;
    long imaginary_d = 1, max_iter = 0, steps = 0, bound = 50, lattice_scale = 1;
    long long pell_delta = 0;
    int ident_d = 5, grid = 400;
    double eps = 0.5, eps_prime = 1.4142135623730951;
    bool quick = false;

    auto add_space_opts = [&](CLI::App* cmd) {
        cmd->add_option("--space", space,
                        "real | complex | r3 | r4-hurwitz | heisenberg");
        cmd->add_option("--variant", variant, "real space variant: nearest | regular");
        cmd->add_option("--imaginary-d", imaginary_d, "d of the complex lattice Z[i*sqrt(d)]");
        cmd->add_option("--lattice", lattice,
                        "digit lattice: z | zi | zid | z3 | hurwitz | heis-int (must match "
                        "the space; zi implies d = 1)");
    };

    CLI::App* cmd_expand = app.add_subcommand("expand", "continued fraction digits of a point");
    add_space_opts(cmd_expand);
    cmd_expand->add_option("--point", point, "exact point, e.g. \"(1/3, 1/5)\" or \"sqrt(1+1i)\"")
        ->required();
    cmd_expand->add_option("--max-iter", max_iter, "iteration budget (env CFX_MAX_ITER)");

    CLI::App* cmd_eval = app.add_subcommand("evaluate", "value of a digit sequence");
    add_space_opts(cmd_eval);
    cmd_eval->add_option("--expansion", digits,
                         "expansion JSON from `expand --format json`, or @file, or a JSON "
                         "array of digit strings")
        ->required();

    CLI::App* cmd_classify = app.add_subcommand("classify", "isometry type of a matrix");
    cmd_classify->add_option("--ring", ring, "z | zi | zid | quat")->required();
    cmd_classify->add_option("--imaginary-d", imaginary_d, "d for ring zid");
    cmd_classify->add_option("--matrix", matrix, "[[a,b],[c,d]]")->required();

    CLI::App* cmd_validate = app.add_subcommand("validate", "Vahlen conditions of a matrix");
    cmd_validate->add_option("--ring", ring, "r3 | r4-hurwitz")->required();
    cmd_validate->add_option("--matrix", matrix, "[[a,b],[c,d]] with blade entries")->required();

    CLI::App* cmd_reduce = app.add_subcommand("reduce", "matrix to generator word");
    cmd_reduce->add_option("--ring", ring, "r3 | r4-hurwitz")->required();
    cmd_reduce->add_option("--matrix", matrix, "[[a,b],[c,d]] with blade entries")->required();

    CLI::App* cmd_pell = app.add_subcommand("pell", "minimal mu^2*delta + 1 = n^2");
    cmd_pell->add_option("--delta", pell_delta, "positive non-square integer")->required();

    CLI::App* cmd_surd = app.add_subcommand("surd2mat", "loxodromic matrix fixing surd roots");
    cmd_surd->add_option("--quadratic", quadratic, "a,b,c of a x^2 + b x + c")->required();

    CLI::App* cmd_cpell = app.add_subcommand("complex-pell", "x^2 + delta y^2 = 1 over Z[i*sqrt(d)]");
    cmd_cpell->add_option("--delta", delta_text, "ring element, e.g. \"-3\" or \"1+2i\"")->required();
    cmd_cpell->add_option("--imaginary-d", imaginary_d, "d of the ring");
    cmd_cpell->add_option("--bound", bound, "coefficient search bound");

    CLI::App* cmd_fixed = app.add_subcommand("fixed", "fixed points of the Moebius action");
    cmd_fixed->add_option("--ring", ring, "z | zi | zid | quat")->required();
    cmd_fixed->add_option("--imaginary-d", imaginary_d, "d for ring zid");
    cmd_fixed->add_option("--matrix", matrix, "[[a,b],[c,d]]")->required();

    CLI::App* cmd_horo = app.add_subcommand("horoball-trace", "height certificate of a rational point");
    add_space_opts(cmd_horo);
    cmd_horo->add_option("--point", point, "rational point")->required();
    cmd_horo->add_option("--max-iter", max_iter, "iteration budget");
    std::string svg_path;
    cmd_horo->add_option("--svg", svg_path, "write an SVG rendering of the trace (real space)");

    CLI::App* cmd_geo = app.add_subcommand("geodesic-min-height",
                                           "minimum gauge-sphere crossing height over a grid");
    cmd_geo->add_option("--space", space, "real | complex");
    cmd_geo->add_option("--eps", eps, "inner endpoint bound (< 1)");
    cmd_geo->add_option("--eps-prime", eps_prime, "outer endpoint bound (> 1)");
    cmd_geo->add_option("--grid", grid, "grid resolution per axis");

    CLI::App* cmd_ident = app.add_subcommand("identities", "reciprocal-tower identities / obstruction");
    cmd_ident->add_option("--d", ident_d, "dimension (2..4 identities, >= 5 sequence)")->required();
    cmd_ident->add_option("--steps", steps, "sequence length for d >= 5");

    CLI::App* cmd_proper = app.add_subcommand("proper", "properness report of a domain");
    add_space_opts(cmd_proper);
    cmd_proper->add_option("--lattice-scale", lattice_scale, "real lattice scale (2 = even CFs)");

    CLI::App* cmd_self = app.add_subcommand("selfcheck", "run the acceptance suite");
    cmd_self->add_flag("--quick", quick, "reduced sample counts (< 10 s)");

    CLI11_PARSE(app, argc, argv);

    // The lattice flag is determined by the space; accept it for symmetry
    // and reject inconsistent combinations.
    if (!lattice.empty()) {
        bool ok = (lattice == "z" && space == "real") ||
                  ((lattice == "zi" || lattice == "zid") && space == "complex") ||
                  (lattice == "z3" && space == "r3") ||
                  (lattice == "hurwitz" && space == "r4-hurwitz") ||
                  (lattice == "heis-int" && space == "heisenberg");
        if (!ok) {
            std::cerr << "error: lattice '" << lattice << "' does not match space '" << space
                      << "'\n";
            return 1;
        }
        if (lattice == "zi") imaginary_d = 1;
    }

    cfx_result* res = nullptr;
    cfx_status st = CFX_ERR_USAGE;

    if (app.got_subcommand(cmd_expand)) {
        st = cfx_expand(space.c_str(), variant.empty() ? nullptr : variant.c_str(), imaginary_d,
                        point.c_str(), env_max_iter(max_iter), &res);
    } else if (app.got_subcommand(cmd_eval)) {
        std::string doc = digits;
        if (!doc.empty() && doc[0] == '@') {
            std::ifstream in(doc.substr(1));
            if (!in) {
                std::cerr << "error: cannot read " << doc.substr(1) << "\n";
                return 1;
            }
            doc.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        }
        st = cfx_evaluate(space.c_str(), variant.empty() ? nullptr : variant.c_str(),
                          imaginary_d, doc.c_str(), &res);
    } else if (app.got_subcommand(cmd_classify)) {
        st = cfx_classify(ring.c_str(), imaginary_d, matrix.c_str(), &res);
    } else if (app.got_subcommand(cmd_validate)) {
        st = cfx_validate_matrix(ring.c_str(), matrix.c_str(), &res);
    } else if (app.got_subcommand(cmd_reduce)) {
        st = cfx_reduce(ring.c_str(), matrix.c_str(), &res);
    } else if (app.got_subcommand(cmd_pell)) {
        st = cfx_pell(pell_delta, &res);
    } else if (app.got_subcommand(cmd_surd)) {
        long long a = 0, b = 0, c = 0;
        if (std::sscanf(quadratic.c_str(), "%lld,%lld,%lld", &a, &b, &c) != 3) {
            std::cerr << "error: --quadratic expects \"a,b,c\"\n";
            return 1;
        }
        st = cfx_surd_to_matrix(a, b, c, &res);
    } else if (app.got_subcommand(cmd_cpell)) {
        st = cfx_complex_pell(delta_text.c_str(), imaginary_d, bound, &res);
    } else if (app.got_subcommand(cmd_fixed)) {
        st = cfx_fixed_points(ring.c_str(), imaginary_d, matrix.c_str(), common.seed, &res);
    } else if (app.got_subcommand(cmd_horo)) {
        st = cfx_horoball_trace(space.c_str(), variant.empty() ? nullptr : variant.c_str(),
                                imaginary_d, point.c_str(), env_max_iter(max_iter), &res);
        if (st == CFX_OK && !svg_path.empty() && res) {
            // Ford-circle style rendering from the JSON trace (real space).
            const char* body = cfx_result_json(res);
            std::ofstream svg(svg_path);
            if (body && svg) {
                std::string doc(body);
                svg << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='-2 -1.2 4 1.4'>\n"
                    << "<line x1='-2' y1='0' x2='2' y2='0' stroke='black' stroke-width='0.01'/>\n";
                // crude but dependency-free: one circle per height entry
                size_t pos = 0;
                double x = 0.3;
                while ((pos = doc.find("\"height_approx\": ", pos)) != std::string::npos) {
                    pos += 17;
                    double h = std::atof(doc.c_str() + pos);
                    double rr = 0.5 / (h > 1e-9 ? h : 1e-9);
                    if (rr > 1.0) rr = 1.0;
                    svg << "<circle cx='" << x << "' cy='" << -rr << "' r='" << rr
                        << "' fill='none' stroke='steelblue' stroke-width='0.008'/>\n";
                    x += 0.4;
                }
                svg << "</svg>\n";
            }
        }
    } else if (app.got_subcommand(cmd_geo)) {
        st = cfx_geodesic_min_height(space.c_str(), eps, eps_prime, grid, &res);
    } else if (app.got_subcommand(cmd_ident)) {
        st = cfx_identities(ident_d, steps, &res);
    } else if (app.got_subcommand(cmd_proper)) {
        st = cfx_properness(space.c_str(), variant.empty() ? nullptr : variant.c_str(),
                            imaginary_d, lattice_scale, &res);
    } else if (app.got_subcommand(cmd_self)) {
        st = cfx_selfcheck(quick ? 1 : 0, common.seed, &res);
    }

    return emit(st, res, common);
}
