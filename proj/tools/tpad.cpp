// tpad command line: lattice dumps, sampling, geometry, oracle, kernels, verification campaigns
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "tpad/airy_bessel.hpp"
#include "tpad/analytic_kernel.hpp"
#include "tpad/experiments.hpp"
#include "tpad/geometry.hpp"
#include "tpad/oracle.hpp"
#include "tpad/sampler.hpp"
#include "tpad/window.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tpad;

namespace {

constexpr const char* VERSION = "0.1.0";

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// collects outputs and writes manifest-<subcommand>.json next to them
struct Run {
    fs::path dir;
    json manifest;
    std::string stem = "manifest";

    void start(const std::string& sub, const fs::path& d) {
        dir = d;
        fs::create_directories(dir);
        manifest["subcommand"] = sub;
        stem = "manifest-" + sub;
        std::replace(stem.begin(), stem.end(), ' ', '-');
        manifest["versions"] = {{"tpad", VERSION}, {"compiler", __VERSION__}, {"cxx", __cplusplus}};
        manifest["timestamps"]["started"] = utc_now();
        manifest["outputs"] = json::array();
        manifest["seeds"] = json::array();
    }
    void write(const fs::path& p, const std::string& data) {
        const fs::path full = p.is_absolute() ? p : dir / p;
        if (full.has_parent_path()) fs::create_directories(full.parent_path());
        std::ofstream out(full, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + full.string());
        out << data;
        manifest["outputs"].push_back({{"file", full.lexically_relative(dir).generic_string()},
                                       {"bytes", data.size()},
                                       {"sha256", sha256_hex(data)}});
    }
    void finish() {
        manifest["timestamps"]["finished"] = utc_now();
        std::ofstream(dir / (stem + ".json")) << manifest.dump(2) << '\n';
    }
};

std::string vec_str(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt17(v[i]);
    return s;
}

Vertex parse_vertex(const std::string& s) {
    Vertex v;
    char comma = 0;
    std::istringstream is(s);
    if (!(is >> v.x1 >> comma >> v.x2) || comma != ',') throw std::invalid_argument("vertex must be x1,x2: " + s);
    return v;
}

// weight from --a or --gamma
struct ModelArgs {
    int n = 4;
    double a = NAN;
    double gamma = NAN;
    double b = 1.0;

    void add(CLI::App* app, bool need_n = true) {
        auto* o = app->add_option("--n", n, "order, a multiple of 4");
        if (need_n) o->required();
        auto* oa = app->add_option("--a", a, "a-weight");
        auto* og = app->add_option("--gamma", gamma, "sets a = n^(gamma-1)");
        oa->excludes(og);
        app->add_option("--b", b, "b-weight")->capture_default_str();
    }
    double weight() const {
        if (!std::isnan(a)) return a;
        if (!std::isnan(gamma)) return std::pow(double(n), gamma - 1.0);
        throw std::invalid_argument("one of --a or --gamma is required");
    }
    json echo() const {
        json j{{"n", n}, {"a", weight()}, {"b", b}};
        if (!std::isnan(gamma)) j["gamma"] = gamma;
        return j;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-periodic Aztec diamond numerics"};
    app.set_version_flag("--version", VERSION);
    app.require_subcommand(1);
    const char* env = std::getenv("TPAD_OUT_DIR");
    std::string out_dir = env && *env ? env : "tpad-out";
    int jobs = 1;
    app.add_option("--out-dir", out_dir, "output directory (default $TPAD_OUT_DIR or tpad-out)");
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    Run run;
    int verdict_code = 0;

    // lattice
    auto* lat_top = app.add_subcommand("lattice", "model construction");
    lat_top->require_subcommand(1);
    auto* lat = lat_top->add_subcommand("dump", "vertices, edges and Kasteleyn entries");
    ModelArgs lat_m;
    lat_m.add(lat);
    lat->callback([&] {
        run.start("lattice dump", out_dir);
        run.manifest["config"] = lat_m.echo();
        const auto m = make_model(lat_m.n, lat_m.weight(), lat_m.b);
        run.write("lattice.json", model_to_json(*m).dump(1) + "\n");
        Table t;
        t.columns = {"edge", "wx", "wy", "bx", "by", "weight", "a_edge", "w_class", "b_class", "k_re", "k_im"};
        for (std::size_t i = 0; i < m->edges.size(); ++i) {
            const EdgeRef& e = m->edges[i];
            const Vertex &w = m->white[e.white], &b = m->black[e.black];
            const cplx k = kasteleyn_entry(*m, e);
            t.add({int(i), w.x1, w.x2, b.x1, b.x2, e.weight, e.a_edge, vertex_class(w), vertex_class(b), k.real(), k.imag()});
        }
        run.write("edges.csv", t.to_csv());
        if (!std::isnan(lat_m.gamma) && lat_m.b == 1.0)
            run.write("window.json", window_to_json(make_window(lat_m.n, lat_m.gamma)).dump(2) + "\n");
    });

    // sample
    auto* smp = app.add_subcommand("sample", "exact samples by domino shuffling");
    ModelArgs smp_m;
    smp_m.add(smp);
    std::uint64_t smp_seed = 1;
    int smp_count = 1;
    smp->add_option("--seed", smp_seed)->capture_default_str();
    smp->add_option("--count", smp_count)->check(CLI::PositiveNumber)->capture_default_str();
    smp->callback([&] {
        run.start("sample", out_dir);
        run.manifest["config"] = smp_m.echo();
        run.manifest["config"]["count"] = smp_count;
        const auto m = make_model(smp_m.n, smp_m.weight(), smp_m.b);
        const DominoShuffler sh(m);
        std::vector<DimerConfiguration> cs(smp_count);
        parallel_for(cs.size(), jobs, [&](std::size_t i) { cs[i] = sh.sample(stream_seed(smp_seed, i)); });
        Table t;
        t.columns = {"sample", "wx", "wy", "bx", "by", "weight", "a_edge"};
        for (int i = 0; i < smp_count; ++i) {
            if (!validate_matching(cs[i])) throw std::runtime_error("sampler returned an invalid matching");
            run.manifest["seeds"].push_back(cs[i].seed);
            for (int id : cs[i].edges) {
                const EdgeRef& e = m->edges[id];
                t.add({i, m->white[e.white].x1, m->white[e.white].x2, m->black[e.black].x1, m->black[e.black].x2,
                       e.weight, e.a_edge});
            }
            run.write("sample_" + std::to_string(i) + ".txt", config_to_text(cs[i]));
        }
        run.write("samples.csv", t.to_csv());
    });

    // geometry analyze
    auto* geo = app.add_subcommand("geometry", "squishing, heights and last path");
    geo->require_subcommand(1);
    auto* ana = geo->add_subcommand("analyze", "analyse one configuration file");
    ModelArgs geo_m;
    geo_m.add(ana);
    std::string geo_in, geo_out = "analysis.json";
    double geo_t = 0.0;
    ana->add_option("--in", geo_in, "dimer list, one 'wx wy bx by weight' per line")->required()->check(CLI::ExistingFile);
    ana->add_option("--out", geo_out, "analysis JSON, relative to the output directory")->capture_default_str();
    ana->add_option("--t", geo_t, "line for the Gamma statistic (needs --gamma)")->capture_default_str();
    ana->callback([&] {
        run.start("geometry analyze", out_dir);
        run.manifest["config"] = geo_m.echo();
        run.manifest["config"]["in"] = geo_in;
        const auto m = make_model(geo_m.n, geo_m.weight(), geo_m.b);
        const DimerConfiguration c = config_from_text(m, read_file(geo_in));
        if (!validate_matching(c)) throw std::invalid_argument("input is not a perfect matching");
        const HeightField h = compute_heights(c);
        const SquishedConfiguration s = squish_and_classify(c);
        const LastPath lp = last_path(s);
        json j = analysis_to_json(c, s, lp, h);
        if (!std::isnan(geo_m.gamma)) {
            const ScalingWindow w = make_window(geo_m.n, geo_m.gamma);
            const GammaValue g = gamma_statistic(s, lp, geo_t, w);
            j["window"] = window_to_json(w);
            j["gamma_statistic"] = {{"t", geo_t}, {"present", g.present}, {"fallback", g.fallback}, {"X", g.X}, {"value", g.value}};
        }
        run.write(geo_out, j.dump(1) + "\n");
        Table t;
        t.columns = {"i", "j", "height"};
        for (int y = 0; y <= 2 * m->n; ++y)
            for (int x = (y & 1); x <= 2 * m->n; x += 2) t.add({x, y, h.at(x, y)});
        run.write(fs::path(geo_out).replace_extension(".heights.csv"), t.to_csv());
    });

    // oracle
    auto* orc_top = app.add_subcommand("oracle", "dense inverse and one-point correlations");
    orc_top->require_subcommand(1);
    auto* orc = orc_top->add_subcommand("kinv", "invert K densely, write rho1 for every edge");
    ModelArgs orc_m;
    orc_m.add(orc);
    bool dump_csv = false;
    orc->add_flag("--dump-csv", dump_csv, "also write every Kinv entry");
    orc->callback([&] {
        run.start("oracle kinv", out_dir);
        run.manifest["config"] = orc_m.echo();
        const auto m = make_model(orc_m.n, orc_m.weight(), orc_m.b);
        const KinvMatrix K = invert_kasteleyn(m);
        Table t;
        t.columns = {"edge", "wx", "wy", "bx", "by", "a_edge", "rho1"};
        for (std::size_t i = 0; i < m->edges.size(); ++i) {
            const EdgeRef& e = m->edges[i];
            t.add({int(i), m->white[e.white].x1, m->white[e.white].x2, m->black[e.black].x1, m->black[e.black].x2,
                   e.a_edge, edge_probability(K, int(i))});
        }
        run.write("rho1.csv", t.to_csv());
        if (dump_csv) {
            Table k;
            k.columns = {"wx", "wy", "bx", "by", "re", "im"};
            for (std::size_t wi = 0; wi < m->white.size(); ++wi)
                for (std::size_t bi = 0; bi < m->black.size(); ++bi) {
                    const cplx v = K.at(int(wi), int(bi));
                    k.add({m->white[wi].x1, m->white[wi].x2, m->black[bi].x1, m->black[bi].x2, v.real(), v.imag()});
                }
            run.write("kinv.csv", k.to_csv());
        }
        run.write("oracle.json", json{{"residual", K.residual}, {"log_abs_det", log_abs_det_kasteleyn(*m)}}.dump(2) + "\n");
    });

    // kernel
    auto* ker = app.add_subcommand("kernel", "contour-integral inverse Kasteleyn entries");
    ker->require_subcommand(1);
    auto* ent = ker->add_subcommand("kinv", "K11 - B + B* at white/black pairs");
    ModelArgs ent_m;
    ent_m.add(ent);
    std::vector<std::string> ent_w, ent_b;
    ent->add_option("--white", ent_w, "x1,x2 (repeatable)")->required();
    ent->add_option("--black", ent_b, "x1,x2, one per --white")->required();
    ent->callback([&] {
        if (ent_w.size() != ent_b.size()) throw std::invalid_argument("--white and --black counts differ");
        run.start("kernel kinv", out_dir);
        run.manifest["config"] = ent_m.echo();
        const auto m = make_model(ent_m.n, ent_m.weight(), ent_m.b);
        Table t;
        t.columns = {"wx", "wy", "bx", "by", "re", "im", "k11_re", "k11_im", "b_re", "b_im", "bstar_re", "bstar_im", "converged"};
        std::vector<std::vector<json>> rows(ent_w.size());
        parallel_for(rows.size(), jobs, [&](std::size_t i) {
            const Vertex w = parse_vertex(ent_w[i]), b = parse_vertex(ent_b[i]);
            const KinvAnalytic k = kinv_analytic(*m, w, b);
            bool ok = true;
            for (const auto& r : k.reports) ok = ok && r.converged;
            rows[i] = {w.x1, w.x2, b.x1, b.x2, k.value.real(), k.value.imag(), k.k11.real(), k.k11.imag(),
                       k.b.real(), k.b.imag(), k.bstar.real(), k.bstar.imag(), ok};
        });
        t.rows = rows;
        run.write("kernel_entries.csv", t.to_csv());
    });
    auto* res = ker->add_subcommand("entry", "rescaled kernel at window coordinates and its Airy limit");
    int res_n = 1024, res_e1 = 0, res_e2 = 0;
    double res_gamma = 0.3, ai = 0, bi = 0, aj = 0, bj = 0;
    bool no_bstar = false;
    res->add_option("--n", res_n)->required();
    res->add_option("--gamma", res_gamma)->capture_default_str();
    res->add_option("--alpha-i", ai)->capture_default_str();
    res->add_option("--beta-i", bi)->capture_default_str();
    res->add_option("--alpha-j", aj)->capture_default_str();
    res->add_option("--beta-j", bj)->capture_default_str();
    res->add_option("--eps1", res_e1, "white class")->check(CLI::Range(0, 1))->capture_default_str();
    res->add_option("--eps2", res_e2, "black class")->check(CLI::Range(0, 1))->capture_default_str();
    res->add_flag("--no-bstar", no_bstar, "drop the B* term");
    bool res_json = false;
    res->add_flag("--json", res_json, "also print the row as JSON");
    res->callback([&] {
        run.start("kernel entry", out_dir);
        run.manifest["config"] = {{"n", res_n}, {"gamma", res_gamma}, {"alpha_i", ai}, {"beta_i", bi}, {"alpha_j", aj},
                                  {"beta_j", bj}, {"eps1", res_e1}, {"eps2", res_e2}, {"bstar", !no_bstar}};
        const ScalingWindow w = make_window(res_n, res_gamma);
        const RescaledValue v = rescaled_kernel(w, ai, bi, res_e2, aj, bj, res_e1, {}, !no_bstar);
        Table t;
        t.columns = {"n", "alpha_i", "beta_i", "alpha_j", "beta_j", "eps1", "eps2", "re", "im", "target_re", "target_im", "abs_err"};
        t.add({res_n, v.pi.alpha, v.pi.beta, v.pj.alpha, v.pj.beta, res_e1, res_e2, v.value.real(), v.value.imag(),
               v.target.real(), v.target.imag(), std::abs(v.value - v.target)});
        run.write("entry.csv", t.to_csv());
        run.write("window.json", window_to_json(w).dump(2) + "\n");
        if (res_json) {
            json j;
            for (std::size_t i = 0; i < t.columns.size(); ++i) j[t.columns[i]] = t.rows[0][i];
            std::cout << j.dump() << '\n';
        }
    });
    auto* cvg = ker->add_subcommand("converge", "max error over an (alpha, beta) grid along an n ladder");
    std::vector<int> n_list;
    std::vector<double> grid;
    double cvg_gamma = 0.3;
    bool cvg_csv = false;
    cvg->add_option("--n-list", n_list)->required()->delimiter(',');
    cvg->add_option("--grid", grid, "values used for both alpha and beta")->delimiter(',');
    cvg->add_option("--gamma", cvg_gamma)->capture_default_str();
    cvg->add_flag("--csv", cvg_csv, "print per-n rows to stdout");
    cvg->callback([&] {
        run.start("kernel converge", out_dir);
        json j{{"ladder", n_list}, {"gamma", cvg_gamma}};
        if (!grid.empty()) j["extra"] = {{"grid", grid}};
        CampaignConfig c = config_from_json("kernel-convergence", j);
        c.jobs = jobs;
        run.manifest["config"] = config_to_json(c);
        const CampaignResult r = run_campaign(c);
        run.write("kernel-convergence.csv", r.table.to_csv());
        run.write("kernel-convergence.verdict.json", r.to_json().dump(2) + "\n");
        // per-n maxima
        Table t;
        t.columns = {"n", "max_abs_err", "max_abs_err_without_bstar"};
        for (int n : n_list) {
            double m1 = 0, m2 = 0;
            for (const auto& row : r.table.rows)
                if (row[0].get<int>() == n) {
                    m1 = std::max(m1, row[10].get<double>());
                    m2 = std::max(m2, row[11].get<double>());
                }
            t.add({n, m1, m2});
        }
        run.write("kernel-convergence-max.csv", t.to_csv());
        if (cvg_csv) std::cout << t.to_csv();
        std::cout << verdict_name(r.verdict) << ' ' << r.summary << '\n';
        if (r.verdict == Verdict::Fail) verdict_code = 1;
    });

    // airy
    auto* air = app.add_subcommand("airy", "extended Airy kernel and Airy process distributions");
    air->require_subcommand(1);
    auto* fdd = air->add_subcommand("fdd", "P[A(t_k) <= xi_k for all k]");
    std::vector<double> times, levels;
    double fdd_tol = 1e-10;
    fdd->add_option("--times", times)->required()->delimiter(',');
    fdd->add_option("--levels", levels)->required()->delimiter(',');
    fdd->add_option("--tol", fdd_tol, "node doubling stops below this change")->capture_default_str();
    fdd->callback([&] {
        if (times.size() != levels.size()) throw std::invalid_argument("--times and --levels differ in length");
        run.start("airy fdd", out_dir);
        run.manifest["config"] = {{"times", times}, {"levels", levels}, {"tol", fdd_tol}};
        AiryQuery q;
        q.times = times;
        q.levels = levels;
        Table t;
        t.columns = {"nodes", "value", "delta"};
        double prev = NAN, delta = INFINITY;
        FddResult r;
        for (q.nodes = 20; q.nodes <= 320; q.nodes *= 2) {
            r = airy_process_fdd(q);
            delta = std::abs(r.value - prev);
            t.add({q.nodes, r.value, std::isnan(prev) ? json(nullptr) : json(delta)});
            prev = r.value;
            if (delta < fdd_tol) break;
        }
        run.write("fdd.csv", t.to_csv());
        run.write("fdd.json", json{{"times", vec_str(times)}, {"levels", vec_str(levels)}, {"value", r.value},
                                   {"delta", delta}, {"converged", delta < fdd_tol}, {"residue", r.residue}}.dump(2) + "\n");
        std::cout << fmt17(r.value) << '\n';
    });
    auto* akr = air->add_subcommand("kernel", "extended Airy kernel A(tau, xi; tau', xi')");
    double tau = 0, xi = 0, taup = 0, xip = 0;
    akr->add_option("--tau", tau)->capture_default_str();
    akr->add_option("--xi", xi)->capture_default_str();
    akr->add_option("--taup", taup)->capture_default_str();
    akr->add_option("--xip", xip)->capture_default_str();
    akr->callback([&] {
        run.start("airy kernel", out_dir);
        run.manifest["config"] = {{"tau", tau}, {"xi", xi}, {"taup", taup}, {"xip", xip}};
        const double v = extended_kernel(tau, xi, taup, xip);
        Table t;
        t.columns = {"tau", "xi", "taup", "xip", "value"};
        t.add({tau, xi, taup, xip, v});
        run.write("airy_kernel.csv", t.to_csv());
        std::cout << fmt17(v) << '\n';
    });

    // bessel
    auto* bes = app.add_subcommand("bessel", "discrete Bessel kernel and the finite-n comparison");
    int at_i = 0, at_j = 0, bes_n = 0;
    double nu = 1.0;
    bes->add_option("--ai", at_i, "even integer")->capture_default_str();
    bes->add_option("--aj", at_j, "even integer")->capture_default_str();
    bes->add_option("--nu", nu)->capture_default_str();
    bes->add_option("--n", bes_n, "also evaluate -a i B_00 at this n");
    bes->callback([&] {
        if (at_i % 2 || at_j % 2) throw std::invalid_argument("--ai and --aj must be even");
        run.start("bessel", out_dir);
        run.manifest["config"] = {{"ai", at_i}, {"aj", at_j}, {"nu", nu}, {"n", bes_n}};
        const Estimate k = bessel_kernel(at_i, at_j, nu);
        Table t;
        t.columns = {"ai", "aj", "nu", "contour_re", "contour_im", "series", "n", "finite_re", "finite_im"};
        std::vector<json> row{at_i, at_j, nu, k.value.real(), k.value.imag(), bessel_series(at_i, at_j, nu)};
        if (bes_n > 0) {
            const Estimate f = bessel_limit_check(bes_n, nu, at_i, at_j);
            row.insert(row.end(), {bes_n, f.value.real(), f.value.imag()});
        } else {
            row.insert(row.end(), {nullptr, nullptr, nullptr});
        }
        t.add(row);
        run.write("bessel.csv", t.to_csv());
    });

    // verify
    auto* ver = app.add_subcommand("verify", "run verification campaigns");
    std::string which, cfg_path;
    int max_samples = 0;
    ver->add_option("campaign", which, "campaign name or 'all'")->required();
    ver->add_option("--config", cfg_path, "JSON overrides")->check(CLI::ExistingFile);
    ver->add_option("--out", out_dir, "output directory (same as --out-dir)");
    ver->add_option("--max-samples", max_samples, "cap Monte Carlo sample counts (0 keeps the defaults)");
    ver->callback([&] {
        std::vector<std::string> names;
        if (which == "all") {
            names = campaign_names();
        } else {
            const auto& all = campaign_names();
            if (std::find(all.begin(), all.end(), which) == all.end())
                throw CLI::ValidationError("campaign", "unknown campaign '" + which + "'");
            names = {which};
        }
        json overrides = json::object();
        if (!cfg_path.empty()) overrides = json::parse(read_file(cfg_path));
        run.start("verify " + which, out_dir);
        run.manifest["config"] = json::object();
        json verdicts = json::array();
        for (const auto& name : names) {
            // a config may be flat or keyed by campaign
            json j = overrides.contains(name) ? overrides[name] : (which == "all" ? json::object() : overrides);
            CampaignConfig c = config_from_json(name, j);
            c.jobs = jobs;
            if (max_samples > 0 && c.samples > max_samples) c.samples = max_samples;
            run.manifest["config"][name] = config_to_json(c);
            run.manifest["seeds"].push_back(c.seed);
            const CampaignResult r = run_campaign(c);
            run.write(name + ".csv", r.table.to_csv());
            run.write(name + ".verdict.json", r.to_json().dump(2) + "\n");
            verdicts.push_back(r.to_json());
            std::cout << (r.criterion ? std::to_string(r.criterion) : std::string("-")) << ' ' << name << ' '
                      << verdict_name(r.verdict) << ' ' << r.summary << '\n';
            for (const auto& note : r.notes) std::cout << "    INFO " << note << '\n';
            if (r.verdict == Verdict::Fail) verdict_code = 1;
        }
        if (names.size() > 1) run.write("verdicts.json", verdicts.dump(2) + "\n");
    });

    try {
        app.parse(argc, argv);
        run.finish();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return verdict_code;
}
