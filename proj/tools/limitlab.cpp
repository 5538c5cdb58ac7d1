#include "macloc/limitlab.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace macloc;

namespace {

int emit(const ConvergenceReport& rep) {
    std::string text = render_report(rep);
    if (!rep.cfg.out.empty()) {
        std::ofstream f(rep.cfg.out);
        if (!f) {
            std::cerr << "cannot open output path " << rep.cfg.out << "\n";
            return 2;
        }
        f << text;
    } else {
        std::cout << text;
    }
    for (const auto& e : rep.errors) std::cerr << e << "\n";
    return report_exit_code(rep);
}

void add_common(CLI::App* sub, ExperimentConfig& cfg) {
    sub->add_option("--n", cfg.n, "number of variables / rank");
    sub->add_option("--mu", cfg.mu, "partition literal, e.g. \"2,1\"");
    sub->add_option("--kernel", cfg.kernel, "hall | macdonald | poly: <Laurent polynomial>");
    sub->add_option("--f", cfg.f, "symmetric-function literal, e.g. \"e[1]*e[1] - 2*m[1,1]\"");
    sub->add_option("--m-from", cfg.m_from, "first twist");
    sub->add_option("--m-to", cfg.m_to, "last twist");
    sub->add_option("--zdeg", cfg.zdeg, "z window cap");
    sub->add_option("--qtdeg", cfg.qtdeg, "q,t total-degree cap");
    sub->add_option("--wdeg", cfg.wdeg, "w cap");
    sub->add_option("--k", cfg.k, "weight-set degree (Z = 1 + z + ... + z^k)");
    sub->add_option("--E", cfg.espec, "bundle spec, e.g. \"A=0;B=geom;C=-z\"");
    sub->add_option("--format", cfg.format, "json | csv | text");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
}

int run_print(const std::string& expr, int nvars) {
    std::string t = expr;
    if (t.rfind("P[", 0) != 0 || t.back() != ']') {
        std::cerr << "print expects a literal of the form P[2,1]\n";
        return 2;
    }
    Partition mu = parse_partition(t.substr(2, t.size() - 3));
    const SymFn<PolyFrac>& P = macdonald_P(mu);
    for (const auto& [lam, c] : P.coeffs) {
        if (nvars > 0 && lam.length() > nvars) continue;
        std::cout << "m[" << lam.str() << "]: " << c.str() << "\n";
    }
    return 0;
}

int run_chi(const std::string& zspec, int n, int m, const std::string& flit,
            const std::string& espec, const std::string& mode, int wdeg, int zdeg,
            const std::string& format) {
    if (zspec.rfind("k=", 0) != 0) {
        std::cerr << "--Z expects k=<degree>\n";
        return 2;
    }
    int k = std::stoi(zspec.substr(2));
    bool w_mode = wdeg > 0;
    SmallVarSet s;
    if (w_mode) s.add("w", wdeg, 0);
    s.add("z", zdeg, -64);
    Ctx ctx = make_ctx(std::move(s));

    VirtualChar Z = vchar_un(ctx, k + 1);
    ESpec es = parse_espec(espec);
    BundleData data;
    data.A = espec_char(es.A, ctx);
    data.B = espec_char(es.B, ctx);
    data.C = espec_char(es.C, ctx);
    data.m = m;
    data.f = parse_symfn(flit);

    auto print_series = [&](const char* name, const TruncSeries& v) {
        if (format == "json") {
            nlohmann::ordered_json j;
            j["version"] = kVersion;
            j["what"] = name;
            j["series"] = serialize_series(v);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << name << " = " << v.str() << "\n";
        }
    };
    if (mode == "loc") {
        print_series("chi", chi_loc(data, Z, n, ctx, w_mode));
    } else if (mode == "ct") {
        print_series("chi0", chi0_ct(data, Z, n, ctx, w_mode));
    } else if (mode == "gap") {
        if (!w_mode) {
            std::cerr << "gap mode requires --wdeg > 0\n";
            return 2;
        }
        GapReport gap = gap_cm(data, Z, n, ctx);
        print_series("gap", gap.gap);
        for (std::size_t i = 0; i < gap.min_z_exp_per_w.size(); ++i) {
            std::cout << "min z-exponent at w^" << i << ": ";
            if (gap.min_z_exp_per_w[i])
                std::cout << *gap.min_z_exp_per_w[i] << "\n";
            else
                std::cout << "(zero slice)\n";
        }
    } else {
        std::cerr << "--mode must be loc, ct, or gap\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact experiments with truncated character calculus"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    for (const char* kind : {"limit", "norm-ns", "norm-nsa", "chi-gap", "selftest"}) {
        CLI::App* sub = app.add_subcommand(kind);
        add_common(sub, cfg);
    }

    CLI::App* pr = app.add_subcommand("print", "print a polynomial, e.g. print P[2,1]");
    std::string expr;
    int nvars = 0;
    bool exact = true;
    pr->add_option("expr", expr)->required();
    pr->add_option("--nvars", nvars, "restrict to partitions with at most this many parts");
    pr->add_flag("--exact", exact, "exact rational-function coefficients (always on)");

    CLI::App* chi = app.add_subcommand("chi", "Euler characteristic / section character");
    std::string zspec = "k=2", mode = "loc", chif = "1", chie = "A=0;B=0;C=0",
                chifmt = "text";
    int chin = 1, chim = 0, chiw = 0, chiz = 16;
    chi->add_option("--Z", zspec, "weight set, k=<degree> for Z = 1+z+...+z^k");
    chi->add_option("--n", chin);
    chi->add_option("--m", chim, "twist");
    chi->add_option("--f", chif);
    chi->add_option("--E", chie, "bundle spec, e.g. \"A=0;B=geom;C=-z\"");
    chi->add_option("--mode", mode, "loc | ct | gap");
    chi->add_option("--wdeg", chiw);
    chi->add_option("--zdeg", chiz);
    chi->add_option("--format", chifmt, "json | text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (pr->parsed()) return run_print(expr, nvars);
        if (chi->parsed()) return run_chi(zspec, chin, chim, chif, chie, mode, chiw, chiz, chifmt);
        cfg.kind = app.get_subcommands().front()->get_name();
        return emit(run_experiment(cfg));
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << "\n";
        return 2;
    }
}
