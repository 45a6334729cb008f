#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hecke/equidist.hpp"
#include "hecke/errors.hpp"
#include "hecke/farey.hpp"
#include "hecke/operators.hpp"
#include "hecke/verify.hpp"

namespace {

using namespace hecke;

std::string fmt15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string coeffs_csv(const RingElem& e) {
    std::ostringstream os;
    const auto& c = e.coeffs();
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ';';
        os << c[i].get_str();
    }
    return os.str();
}

enum class Cell { Num, Coeffs, Str };

// Rows of pre-formatted cells, rendered as CSV (15 significant digits for
// floats, '\n' line endings) or as a JSON array of objects with the same
// field names. Exact ring data stays an integer array in JSON, never a float.
struct Table {
    std::vector<std::string> columns;
    std::vector<Cell> kinds;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const {
        std::ostringstream os;
        for (size_t i = 0; i < columns.size(); ++i) {
            if (i) os << ',';
            os << columns[i];
        }
        os << '\n';
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                if (i) os << ',';
                os << row[i];
            }
            os << '\n';
        }
        return os.str();
    }

    std::string json() const {
        std::ostringstream os;
        os << "[";
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r) os << ",";
            os << "\n  {";
            for (size_t i = 0; i < rows[r].size(); ++i) {
                if (i) os << ",";
                os << "\"" << columns[i] << "\":";
                const std::string& cell = rows[r][i];
                switch (kinds[i]) {
                    case Cell::Num:
                        os << (cell.empty() ? "null" : cell);
                        break;
                    case Cell::Coeffs: {
                        std::string arr = cell;
                        for (char& ch : arr)
                            if (ch == ';') ch = ',';
                        os << '[' << arr << ']';
                        break;
                    }
                    case Cell::Str:
                        os << '"' << cell << '"';
                        break;
                }
            }
            os << "}";
        }
        os << "\n]\n";
        return os.str();
    }
};

// stdout by default; with --out, written to a temp file and renamed.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    const std::string tmp = out_path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + tmp);
        f << text;
    }
    if (std::rename(tmp.c_str(), out_path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + out_path);
}

struct CommonOpts {
    long q = 3;
    std::string format = "csv";
    std::string out;
    int cap = kDefaultWordCap;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_seed = false) {
    cmd->add_option("--q", o.q, "odd angle parameter q >= 3")->required();
    cmd->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output path (written atomically)");
    cmd->add_option("--cap", o.cap, "word enumeration cap");
    if (with_seed) cmd->add_option("--seed", o.seed, "deterministic RNG seed");
}

void render(const CommonOpts& o, const Table& t) {
    emit(o.out, o.format == "json" ? t.json() : t.csv());
}

int run(int argc, char** argv) {
    CLI::App app{"Exact and numerical computation with generalized Farey maps of Hecke "
                 "triangle groups"};
    app.require_subcommand(1);

    // minpoly
    CommonOpts mp_o;
    CLI::App* mp = app.add_subcommand("minpoly", "minimal polynomial of 2cos(pi/q)");
    add_common(mp, mp_o);

    // stern-brocot
    CommonOpts sb_o;
    int sb_level = 1;
    bool sb_exact = false;
    CLI::App* sb = app.add_subcommand("stern-brocot", "generalized Stern-Brocot level set");
    add_common(sb, sb_o);
    sb->add_option("--level", sb_level, "level n >= 0")->required();
    sb->add_flag("--exact", sb_exact, "additionally audit each point by exact orbit");

    // orbit
    CommonOpts ob_o;
    double ob_x = 0.5;
    int ob_n = 10;
    CLI::App* ob = app.add_subcommand("orbit", "forward orbit of the Farey map");
    add_common(ob, ob_o);
    ob->add_option("--x", ob_x)->required();
    ob->add_option("--n", ob_n)->required();

    // preimage
    CommonOpts pr_o;
    int pr_n = 1;
    double pr_alpha = 0.5, pr_beta = 1.0;
    std::string pr_method = "words";
    long pr_samples = 1000000;
    CLI::App* pr = app.add_subcommand("preimage", "Lebesgue volume of F^{-n}([alpha,beta])");
    add_common(pr, pr_o, true);
    pr->add_option("--n", pr_n)->required();
    pr->add_option("--alpha", pr_alpha)->required();
    pr->add_option("--beta", pr_beta)->required();
    pr->add_option("--method", pr_method)->check(CLI::IsMember({"words", "mc"}));
    pr->add_option("--samples", pr_samples);

    // comb
    CommonOpts cb_o;
    double cb_x = 1.0;
    int cb_n = 2, cb_grid = 0;
    bool cb_nolog = false;
    CLI::App* cb = app.add_subcommand("comb", "weighted Dirac comb rho_n at a base point");
    add_common(cb, cb_o);
    cb->add_option("--x", cb_x)->required();
    cb->add_option("--n", cb_n)->required();
    cb->add_option("--cdf-grid", cb_grid, "emit the distribution function on a uniform grid");
    cb->add_flag("--no-log-factor", cb_nolog);

    // cusp-comb
    CommonOpts cc_o;
    std::string cc_base;
    int cc_n = 2;
    bool cc_nolog = false;
    CLI::App* cc = app.add_subcommand("cusp-comb", "reduced-fraction comb at a cusp base point");
    add_common(cc, cc_o);
    cc->add_option("--base-word", cc_base, "letters applied to (1,1), e.g. \"0,2\"; empty = (1,1)");
    cc->add_option("--n", cc_n)->required();
    cc->add_flag("--no-log-factor", cc_nolog);

    // tail
    CommonOpts tl_o;
    long tl_N = 0, tl_nmax = 10, tl_samples = 100000;
    CLI::App* tl = app.add_subcommand("tail", "first-return tail probabilities of Y(N)");
    add_common(tl, tl_o, true);
    tl->add_option("--N0", tl_N, "N in Y = (1/((N+1)lambda+1), 1]");
    tl->add_option("--n-max", tl_nmax)->required();
    tl->add_option("--samples", tl_samples, "Monte Carlo samples (0 = exact only)");

    // mixing
    CommonOpts mx_o;
    std::pair<double, double> mx_u{0.5, 1.0}, mx_v{0.5, 1.0};
    int mx_nmax = 8;
    CLI::App* mx = app.add_subcommand("mixing", "log(n) mu(F^{-n}(U) n V)");
    add_common(mx, mx_o);
    mx->add_option("--u", mx_u, "interval a,b")->required()->delimiter(',');
    mx->add_option("--v", mx_v, "interval c,d")->required()->delimiter(',');
    mx->add_option("--n-max", mx_nmax)->required();

    // pf
    CommonOpts pf_o;
    double pf_x = 0.5;
    int pf_n = 1;
    std::string pf_f = "one";
    CLI::App* pf = app.add_subcommand("pf", "pointwise Perron-Frobenius iterate (P^n f)(x)");
    add_common(pf, pf_o);
    pf->add_option("--x", pf_x)->required();
    pf->add_option("--n", pf_n)->required();
    pf->add_option("--f", pf_f)->check(CLI::IsMember({"one", "invx"}));

    // ulam
    CommonOpts ul_o;
    int ul_bins = 256, ul_iters = 0;
    CLI::App* ul = app.add_subcommand("ulam", "Ulam discretization of the operator");
    add_common(ul, ul_o);
    ul->add_option("--bins", ul_bins)->required();
    ul->add_option("--iters", ul_iters)->required();

    // verify
    CommonOpts vf_o;
    int vf_maxn = 5;
    CLI::App* vf = app.add_subcommand("verify", "run the desk-scale invariant suite");
    add_common(vf, vf_o);
    vf->add_option("--max-n", vf_maxn, "word-depth bound for enumeration checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (mp->parsed()) {
        const RingContext ctx(mp_o.q);
        if (mp_o.format == "json") {
            std::ostringstream os;
            os << "{\"q\":" << mp_o.q << ",\"minpoly\":[";
            for (size_t i = 0; i < ctx.minpoly().size(); ++i) {
                if (i) os << ',';
                os << ctx.minpoly()[i].get_str();
            }
            os << "]}\n";
            emit(mp_o.out, os.str());
        } else {
            std::ostringstream os;
            for (size_t i = 0; i < ctx.minpoly().size(); ++i) {
                if (i) os << ',';
                os << ctx.minpoly()[i].get_str();
            }
            os << '\n';
            emit(mp_o.out, os.str());
        }
        return 0;
    }

    if (sb->parsed()) {
        const RingContext ctx(sb_o.q);
        const auto level = stern_brocot_level(ctx, sb_level, sb_o.cap);
        if (sb_exact) {
            const FareyMap fm(ctx);
            const ProjPoint zero = proj_from_long(ctx, 0, 1), one = proj_from_long(ctx, 1, 1);
            for (const ProjPoint& p : level) {
                ProjPoint cur = p;
                for (int i = 0; i < sb_level; ++i) cur = fm.apply(cur);
                if (!proj_equal(cur, zero) && !proj_equal(cur, one))
                    throw std::logic_error("exact orbit audit failed");
            }
        }
        Table t;
        t.columns = {"level", "index", "num_coeffs", "den_coeffs", "float_value"};
        t.kinds = {Cell::Num, Cell::Num, Cell::Coeffs, Cell::Coeffs, Cell::Num};
        for (size_t i = 0; i < level.size(); ++i) {
            t.rows.push_back({std::to_string(sb_level), std::to_string(i),
                              coeffs_csv(level[i].num), coeffs_csv(level[i].den),
                              fmt15(level[i].to_double())});
        }
        render(sb_o, t);
        return 0;
    }

    if (ob->parsed()) {
        const RingContext ctx(ob_o.q);
        const FareyMap fm(ctx);
        const std::vector<double> orbit = fm.orbit(ob_x, ob_n);
        if (ob_o.format == "json") {
            std::ostringstream os;
            os << "{\"q\":" << ob_o.q << ",\"orbit\":[";
            for (size_t i = 0; i < orbit.size(); ++i) {
                if (i) os << ',';
                os << fmt15(orbit[i]);
            }
            os << "]}\n";
            emit(ob_o.out, os.str());
        } else {
            std::ostringstream os;
            for (double v : orbit) os << fmt15(v) << '\n';
            emit(ob_o.out, os.str());
        }
        return 0;
    }

    if (pr->parsed()) {
        const RingContext ctx(pr_o.q);
        const FareyMap fm(ctx);
        Table t;
        t.columns = {"q", "n", "alpha", "beta", "method", "value", "stderr", "samples"};
        t.kinds = {Cell::Num, Cell::Num, Cell::Num, Cell::Num,
                   Cell::Str, Cell::Num, Cell::Num, Cell::Num};
        if (pr_method == "words") {
            const double v = preimage_lebesgue_words(fm, pr_n, pr_alpha, pr_beta, pr_o.cap);
            t.rows.push_back({std::to_string(pr_o.q), std::to_string(pr_n), fmt15(pr_alpha),
                              fmt15(pr_beta), "words", fmt15(v), "", ""});
        } else {
            const McEstimate mc =
                preimage_lebesgue_montecarlo(fm, pr_n, pr_alpha, pr_beta, pr_samples, pr_o.seed);
            t.rows.push_back({std::to_string(pr_o.q), std::to_string(pr_n), fmt15(pr_alpha),
                              fmt15(pr_beta), "mc", fmt15(mc.estimate), fmt15(mc.stderr_),
                              std::to_string(mc.samples)});
        }
        render(pr_o, t);
        return 0;
    }

    if (cb->parsed()) {
        const RingContext ctx(cb_o.q);
        const FareyMap fm(ctx);
        const WeightedComb comb = dirac_comb(fm, cb_x, cb_n, !cb_nolog, cb_o.cap);
        Table t;
        if (cb_grid > 0) {
            t.columns = {"y", "cdf"};
            t.kinds = {Cell::Num, Cell::Num};
            for (int i = 0; i <= cb_grid; ++i) {
                const double y = static_cast<double>(i) / cb_grid;
                t.rows.push_back({fmt15(y), fmt15(comb.cdf(y))});
            }
        } else {
            t.columns = {"location", "weight"};
            t.kinds = {Cell::Num, Cell::Num};
            for (const auto& a : comb.atoms) t.rows.push_back({fmt15(a.location), fmt15(a.weight)});
        }
        render(cb_o, t);
        return 0;
    }

    if (cc->parsed()) {
        const RingContext ctx(cc_o.q);
        const ReducedFraction base =
            reduced_from_word(ctx, word_parse(cc_base), reduced_base_one(ctx));
        const CuspComb comb = cusp_comb(ctx, base, cc_n, !cc_nolog, cc_o.cap);
        Table t;
        t.columns = {"location", "weight"};
        t.kinds = {Cell::Num, Cell::Num};
        for (const auto& a : comb.comb.atoms) t.rows.push_back({fmt15(a.location), fmt15(a.weight)});
        render(cc_o, t);
        return 0;
    }

    if (tl->parsed()) {
        const RingContext ctx(tl_o.q);
        Table t;
        t.columns = {"q", "N0", "n", "exact", "mc_estimate", "mc_stderr", "censored"};
        t.kinds = {Cell::Num, Cell::Num, Cell::Num, Cell::Num, Cell::Num, Cell::Num, Cell::Num};
        if (tl_samples > 0) {
            const FareyMap fm(ctx);
            const TailReport rep = tail_montecarlo(fm, tl_N, tl_nmax, tl_samples, tl_o.seed);
            for (const auto& row : rep.rows) {
                t.rows.push_back({std::to_string(tl_o.q), std::to_string(tl_N),
                                  std::to_string(row.n), fmt15(row.exact), fmt15(row.estimate),
                                  fmt15(row.stderr_), std::to_string(rep.censored)});
            }
        } else {
            for (long n = 1; n <= tl_nmax; ++n) {
                t.rows.push_back({std::to_string(tl_o.q), std::to_string(tl_N), std::to_string(n),
                                  fmt15(tail_exact(ctx, tl_N, n)), "", "", "0"});
            }
        }
        render(tl_o, t);
        return 0;
    }

    if (mx->parsed()) {
        const RingContext ctx(mx_o.q);
        const FareyMap fm(ctx);
        Table t;
        t.columns = {"q", "n", "statistic"};
        t.kinds = {Cell::Num, Cell::Num, Cell::Num};
        for (int n = 2; n <= mx_nmax; ++n) {
            const double v =
                mixing_statistic(fm, mx_u.first, mx_u.second, mx_v.first, mx_v.second, n, mx_o.cap);
            t.rows.push_back({std::to_string(mx_o.q), std::to_string(n), fmt15(v)});
        }
        render(mx_o, t);
        return 0;
    }

    if (pf->parsed()) {
        const RingContext ctx(pf_o.q);
        const FareyMap fm(ctx);
        const DensityFn f = density_by_name(pf_f);
        const double v = pf_iterate_pointwise(fm, f.fn, pf_x, pf_n, pf_o.cap);
        if (pf_o.format == "json") {
            emit(pf_o.out, "{\"value\":" + fmt15(v) + "}\n");
        } else {
            emit(pf_o.out, fmt15(v) + "\n");
        }
        return 0;
    }

    if (ul->parsed()) {
        const RingContext ctx(ul_o.q);
        const FareyMap fm(ctx);
        const UlamMatrix m = ulam_build(fm, ul_bins);
        const std::vector<double> density =
            ulam_iterate(m, std::vector<double>(static_cast<size_t>(ul_bins), 1.0), ul_iters);
        Table t;
        t.columns = {"bin_left", "bin_right", "density"};
        t.kinds = {Cell::Num, Cell::Num, Cell::Num};
        for (int i = 0; i < ul_bins; ++i) {
            t.rows.push_back(
                {fmt15(m.bin_left(i)), fmt15(m.bin_right(i)), fmt15(density[static_cast<size_t>(i)])});
        }
        render(ul_o, t);
        return 0;
    }

    if (vf->parsed()) {
        const std::vector<CheckResult> results = run_verify_suite(vf_o.q, vf_maxn);
        std::ostringstream os;
        bool all_pass = true;
        for (const auto& r : results) {
            all_pass = all_pass && r.pass;
            char line[512];
            std::snprintf(line, sizeof line, "%s  %-34s %8.3fs  %s\n", r.pass ? "PASS" : "FAIL",
                          r.name.c_str(), r.seconds, r.detail.c_str());
            os << line;
        }
        os << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES\n");
        emit(vf_o.out, os.str());
        return all_pass ? 0 : 2;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hecke::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hecke::PrecisionExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
