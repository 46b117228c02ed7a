// Batch front end: one subcommand per module, CSV/JSON outputs plus a
// manifest with content hashes in the output directory.

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stratdamp/decay_fit.hpp"
#include "stratdamp/spectral_density.hpp"
#include "stratdamp/special_selftest.hpp"
#include "stratdamp/spectrum.hpp"
#include "stratdamp/timestepper.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stratdamp;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

class Output {
public:
    void open(const std::string& dir) {
        dir_ = dir;
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw Error(ErrorCode::InvalidArgument, "cannot create output directory '" + dir + "'");
    }

    void write(const std::string& name, const std::string& content) {
        std::ofstream f(fs::path(dir_) / name, std::ios::binary);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + name);
        f << content;
        char hash[17];
        std::snprintf(hash, sizeof hash, "%016" PRIx64, fnv1a64(content));
        files_.push_back({{"name", name}, {"bytes", content.size()}, {"fnv1a64", hash}});
    }

    void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

    void manifest(const json& config, double wall_seconds, int status) {
        json m;
        m["tool"] = "stratdamp";
        m["version"] = kVersion;
        m["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                     std::to_string(EIGEN_MINOR_VERSION);
        m["config"] = config;
        m["wall_seconds"] = wall_seconds;
        m["exit_status"] = status;
        m["files"] = files_;
        std::ofstream f(fs::path(dir_) / "manifest.json");
        f << m.dump(2) << "\n";
    }

    bool is_open() const { return !dir_.empty(); }

private:
    std::string dir_;
    json files_ = json::array();
};

struct Globals {
    std::string profile = "default";
    std::string out = "out";
    int jobs = 0;
    int grid_n = 0;
    std::vector<double> eps_ladder;
    double delta_tilde = 0.05;
    double tol = 0.15;
};

struct DataOptions {
    double center = 1.0, sigma = 0.1, cutoff = 0.75;
    std::string field = "omega";  // omega | varrho | both
};

void add_data_options(CLI::App* sub, DataOptions& d) {
    sub->add_option("--data-center", d.center, "Center of the Gaussian initial data");
    sub->add_option("--data-sigma", d.sigma, "Width of the Gaussian initial data");
    sub->add_option("--data-cutoff", d.cutoff, "Half-width of the smooth cutoff");
    sub->add_option("--data-field", d.field, "Which field carries the bump")
        ->check(CLI::IsMember({"omega", "varrho", "both"}));
}

struct Context {
    Profile profile;
    RegimePartition partition;
};

Context load(const Globals& g) {
    ProfileSpec spec = load_profile_spec(g.profile);
    if (g.grid_n > 0) spec.grid_n = g.grid_n;
    Context c{build_profile(spec), {}};
    if (c.profile.stratified()) {
        c.partition = partition_regimes(c.profile, g.delta_tilde);
    } else {
        // Every y is non-stratified; collapse the band to a point.
        c.partition.theta1 = c.partition.theta2 = 0.0;
        c.partition.delta_tilde = g.delta_tilde;
    }
    return c;
}

ModeData make_data(const Context& c, const DataOptions& d, int k) {
    const ComplexVector bump = gaussian_bump(c.profile, d.center, d.sigma, d.cutoff);
    const ComplexVector zero = ComplexVector::Zero(bump.size());
    const bool om = d.field != "varrho", vr = d.field != "omega";
    return regularize_data(c.profile, om ? bump : zero, vr ? bump : zero, k);
}

json intervals(const std::vector<Interval>& v) {
    json a = json::array();
    for (const auto& i : v) a.push_back({i.lo, i.hi});
    return a;
}

json config_echo(const Globals& g, const std::string& mode) {
    const std::vector<double> ladder = g.eps_ladder.empty() ? DensityOptions{}.eps_ladder : g.eps_ladder;
    return {{"mode", mode},         {"profile", g.profile},         {"out", g.out},
            {"jobs", g.jobs},       {"grid_n", g.grid_n},           {"eps_ladder", ladder},
            {"delta_tilde", g.delta_tilde}, {"tol", g.tol}};
}

// Probes used when none are given: strong at the center, weak where mu = 1/4,
// non-stratified halfway to the lower wall.
std::vector<double> default_probes(const Context& c) {
    const auto& p = c.profile;
    double a = p.theta1, b = c.partition.varpi11;
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        (p.J(m) < 0.1875 ? a : b) = m;
    }
    return {0.5 * (p.theta1 + p.theta2), 0.5 * (a + b), 0.5 * p.theta1};
}

std::string probe_label(const char* q, double y) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s@%.6g", q, y);
    return buf;
}

std::string norms_csv(const NormSeries& ns) {
    std::ostringstream s;
    s << "t,psi_l2,dpsi_l2,rho_l2,omega_l2";
    for (const auto& pr : ns.probes)
        for (const char* q : {"psi", "dpsi", "rho", "omega", "drho"}) s << "," << csv_field(probe_label(q, pr.y));
    s << "\n";
    for (size_t i = 0; i < ns.times.size(); ++i) {
        s << num(ns.times[i]) << "," << num(ns.psi_l2[i]) << "," << num(ns.dpsi_l2[i]) << "," << num(ns.rho_l2[i])
          << "," << num(ns.omega_l2[i]);
        for (const auto& pr : ns.probes)
            s << "," << num(pr.psi[i]) << "," << num(pr.dpsi[i]) << "," << num(pr.rho[i]) << "," << num(pr.omega[i])
              << "," << num(pr.drho[i]);
        s << "\n";
    }
    return s.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') cur += line[++i];
            else if (c == '"') quoted = false;
            else cur += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

json report_json(const std::vector<DecayReport>& reports) {
    json a = json::array();
    for (const auto& r : reports) {
        json j = {{"probe_y", r.prediction.y},
                  {"quantity", to_string(r.prediction.quantity)},
                  {"regime", to_string(r.prediction.regime)},
                  {"mu", r.prediction.mu},
                  {"predicted", r.prediction.exponent},
                  {"log_correction", r.prediction.log_correction},
                  {"zero_field", r.prediction.zero_field},
                  {"fitted", r.fitted},
                  {"ci", r.ci},
                  {"window", {r.t_min, r.t_max}},
                  {"envelope_period", r.envelope_period},
                  {"max_value", r.max_value},
                  {"verdict", r.pass ? "pass" : "fail"}};
        if (r.prediction.secondary_exponent) j["secondary_exponent"] = *r.prediction.secondary_exponent;
        a.push_back(j);
    }
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear inviscid damping of stratified shear flows in a channel"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML configuration file");
    Globals g;
    app.add_option("--profile", g.profile, "Profile spec (TOML, JSON or CSV path, or 'default')");
    app.add_option("--out", g.out, "Output directory");
    app.add_option("--jobs", g.jobs, "Worker threads (default: STRATDAMP_THREADS or hardware)");
    app.add_option("--grid-n", g.grid_n, "Grid intervals on [0,2]")->check(CLI::PositiveNumber);
    app.add_option("--eps-ladder", g.eps_ladder, "Decreasing eps values, comma separated")->delimiter(',');
    app.add_option("--delta-tilde", g.delta_tilde, "Half-width in J of the mild bands")->check(CLI::PositiveNumber);
    app.add_option("--tol", g.tol, "Verdict tolerance on fitted exponents")->check(CLI::PositiveNumber);

    // classify
    std::vector<double> classify_probes;
    auto* classify = app.add_subcommand("classify", "Regimes, hypotheses and Richardson numbers");
    classify->add_option("--probes", classify_probes, "Positions to report")->delimiter(',');

    // resolvent
    int rk = 1;
    double ry0 = 1.0, reps = 1e-3;
    std::string rside = "minus";
    bool rfrob = false;
    DataOptions rdata;
    auto* resolvent = app.add_subcommand("resolvent", "Solve the Taylor-Goldstein resolvent at one spectral point");
    resolvent->add_option("--k", rk)->check(CLI::PositiveNumber);
    resolvent->add_option("--y0", ry0)->check(CLI::Range(0.0, 2.0));
    resolvent->add_option("--eps", reps)->check(CLI::PositiveNumber);
    resolvent->add_option("--side", rside)->check(CLI::IsMember({"plus", "minus"}));
    resolvent->add_flag("--frobenius", rfrob, "Fit critical-layer exponents");
    add_data_options(resolvent, rdata);

    // contour
    int ck = 1;
    std::vector<double> ctimes{0.0, 1.0, 2.0, 5.0};
    double cpanel = 0.01;
    bool cfull = false;
    DataOptions cdata;
    auto* contour = app.add_subcommand("contour", "Evolve one mode through the spectral representation");
    contour->add_option("--k", ck)->check(CLI::PositiveNumber);
    contour->add_option("--times", ctimes)->delimiter(',');
    contour->add_option("--panel-width", cpanel)->check(CLI::PositiveNumber);
    contour->add_flag("--full-interval", cfull, "Integrate y0 over [0,2]");
    add_data_options(contour, cdata);

    // evolve
    int ek = 1;
    double eend = 5.0, edt = 0.0, esample = 0.01, estore = 10.0;
    std::vector<double> eprobes;
    DataOptions edata;
    auto* evolve_cmd = app.add_subcommand("evolve", "Time-step one mode and record norms");
    evolve_cmd->add_option("--k", ek);
    evolve_cmd->add_option("--t-end", eend)->check(CLI::NonNegativeNumber);
    evolve_cmd->add_option("--dt", edt)->check(CLI::NonNegativeNumber);
    evolve_cmd->add_option("--sample-dt", esample)->check(CLI::PositiveNumber);
    evolve_cmd->add_option("--store-until", estore, "Keep full fields up to this time");
    evolve_cmd->add_option("--probes", eprobes)->delimiter(',');
    add_data_options(evolve_cmd, edata);

    // spectrum
    int sk = 1, snodes = 64;
    double sg = -1.0;
    std::vector<double> sbox;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Count eigenvalues by the argument principle");
    spectrum_cmd->add_option("--k", sk)->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--nodes-per-side", snodes)->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--g-scale", sg, "Gravity used in the shooting equation (default: profile)");
    spectrum_cmd->add_option("--box", sbox, "re_lo,re_hi,im_lo,im_hi")->delimiter(',')->expected(4);

    // fit
    std::string finput, fcolumn, ftcol = "t";
    double ftmin = 20.0, ftmax = 200.0, fenv = 0.0;
    bool flog = false;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a power law to a column of a norms CSV");
    fit_cmd->add_option("--input", finput)->required();
    fit_cmd->add_option("--column", fcolumn)->required();
    fit_cmd->add_option("--time-column", ftcol);
    fit_cmd->add_option("--t-min", ftmin)->check(CLI::PositiveNumber);
    fit_cmd->add_option("--t-max", ftmax)->check(CLI::PositiveNumber);
    fit_cmd->add_option("--envelope", fenv, "Envelope block length (0: none)");
    fit_cmd->add_flag("--log-corrected", flog);

    // compare
    int mk = 1;
    double mtmin = 20.0, mtmax = 200.0;
    std::vector<double> mprobes;
    DataOptions mdata;
    auto* compare_cmd = app.add_subcommand("compare", "Fit decay and growth exponents against predictions");
    compare_cmd->add_option("--k", mk)->check(CLI::PositiveNumber);
    compare_cmd->add_option("--t-min", mtmin)->check(CLI::PositiveNumber);
    compare_cmd->add_option("--t-max", mtmax)->check(CLI::PositiveNumber);
    compare_cmd->add_option("--probes", mprobes)->delimiter(',');
    add_data_options(compare_cmd, mdata);

    unsigned seed = 20240611u;
    int samples = 200;
    auto* selftest = app.add_subcommand("special-selftest", "Whittaker identity residuals");
    selftest->add_option("--seed", seed);
    selftest->add_option("--samples", samples)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    const auto start = std::chrono::steady_clock::now();
    Output out;
    std::string mode = app.get_subcommands().front()->get_name();
    json config = config_echo(g, mode);
    int status = 0;
    try {
        out.open(g.out);
        if (mode == "special-selftest") {
            config["seed"] = seed;
            std::ostringstream s;
            s << "identity,residual,tolerance,pass\n";
            for (const auto& c : special_selftest(seed, samples)) {
                s << csv_field(c.name) << "," << num(c.residual) << "," << num(c.tolerance) << ","
                  << (c.pass ? 1 : 0) << "\n";
                if (!c.pass) status = 2;
            }
            out.write("selftest.csv", s.str());
        } else if (mode == "fit") {
            config.update({{"input", finput}, {"column", fcolumn}, {"t_min", ftmin}, {"t_max", ftmax}});
            std::ifstream f(finput);
            if (!f) throw Error(ErrorCode::ConfigParse, "cannot open '" + finput + "'");
            std::string line;
            std::getline(f, line);
            const auto header = split_csv_line(line);
            const auto ti = std::find(header.begin(), header.end(), ftcol) - header.begin();
            const auto vi = std::find(header.begin(), header.end(), fcolumn) - header.begin();
            if (ti == static_cast<long>(header.size()) || vi == static_cast<long>(header.size()))
                throw Error(ErrorCode::ConfigParse, "column not found in '" + finput + "'");
            std::vector<double> t, v;
            while (std::getline(f, line)) {
                if (line.empty()) continue;
                const auto row = split_csv_line(line);
                t.push_back(std::stod(row.at(ti)));
                v.push_back(std::stod(row.at(vi)));
            }
            const auto r = fit_power_law(t, v, ftmin, ftmax, flog, fenv);
            out.write_json("fit.json", {{"column", fcolumn},
                                        {"exponent", r.exponent},
                                        {"ci", r.ci},
                                        {"log_amplitude", r.log_amplitude},
                                        {"points", r.points},
                                        {"log_corrected", flog}});
        } else {
            const Context c = load(g);
            DensityOptions dens;
            if (!g.eps_ladder.empty()) dens.eps_ladder = g.eps_ladder;
            if (mode == "classify") {
                const auto h = check_hypotheses(c.profile);
                const auto& pt = c.partition;
                json probes = json::array();
                for (double y : classify_probes) {
                    const auto r = richardson(c.profile, y);
                    probes.push_back({{"y", y}, {"J", r.J}, {"mu", r.mu}, {"nu", r.nu},
                                      {"regime", to_string(pt.lookup(y))}});
                }
                const auto band = essential_band(c.profile);
                out.write_json(
                    "classify.json",
                    {{"family", c.profile.family},
                     {"theta", {c.profile.theta1, c.profile.theta2}},
                     {"varpi", {{"varpi11", pt.varpi11}, {"varpi1", pt.varpi1}, {"varpi12", pt.varpi12},
                                {"varpi21", pt.varpi21}, {"varpi2", pt.varpi2}, {"varpi22", pt.varpi22}}},
                     {"delta_tilde", pt.delta_tilde},
                     {"regimes", {{"non_stratified", intervals(pt.non_stratified())},
                                  {"weak", intervals(pt.weak())},
                                  {"mild", intervals(pt.mild())},
                                  {"strong", intervals(pt.strong())},
                                  {"weak_extended", intervals(pt.weak_extended())},
                                  {"strong_extended", intervals(pt.strong_extended())}}},
                     {"essential_band", {band.lo, band.hi}},
                     {"hypotheses", {{"HP", h.HP}, {"Hv", h.Hv}, {"H1", h.H1}, {"H1_value", h.H1_value},
                                     {"H2", h.H2}, {"H2_1", h.H2_1}, {"H2_2", h.H2_2}, {"H2_3", h.H2_3},
                                     {"c0", h.c0}, {"C0", h.C0}, {"J_max", h.J_max}, {"y_tilde", h.y_tilde},
                                     {"root_count", h.root_count}, {"H3", h.H3}}},
                     {"probes", probes}});
            } else if (mode == "resolvent") {
                config.update({{"k", rk}, {"y0", ry0}, {"eps", reps}, {"side", rside}});
                const ModeData data = make_data(c, rdata, rk);
                const ResolventQuery q{rk, ry0, reps, rside == "plus" ? Side::Plus : Side::Minus};
                const auto f = solve_resolvent(c.profile, &c.partition, q, data);
                std::ostringstream s;
                s << "y,phi_re,phi_im,psi_re,psi_im,rho_re,rho_im\n";
                for (Eigen::Index i = 0; i < f.grid.size(); ++i)
                    s << num(f.grid(i)) << "," << num(f.phi(i).real()) << "," << num(f.phi(i).imag()) << ","
                      << num(f.psi(i).real()) << "," << num(f.psi(i).imag()) << "," << num(f.rho(i).real()) << ","
                      << num(f.rho(i).imag()) << "\n";
                out.write("resolvent.csv", s.str());
                const auto r = richardson(c.profile, ry0);
                json j = {{"regime", to_string(f.regime)}, {"residual", r.J >= 0 ? f.residual : 0.0},
                          {"eps0", q.eps0(c.profile)}, {"J", r.J}, {"mu", r.mu}, {"nu", r.nu},
                          {"mesh_nodes", f.mesh.size()}};
                if (rfrob) {
                    const auto fit = frobenius_fit(c.profile, f, r);
                    j["frobenius"] = {{"a_r", {fit.a_r.real(), fit.a_r.imag()}},
                                      {"a_s", {fit.a_s.real(), fit.a_s.imag()}},
                                      {"residual", fit.residual},
                                      {"exponent_shift", {fit.exponent_shift.real(), fit.exponent_shift.imag()}},
                                      {"singular_exponent", fit.singular_exponent},
                                      {"free_residual", fit.free_residual}};
                }
                out.write_json("resolvent.json", j);
            } else if (mode == "contour") {
                config.update({{"k", ck}, {"times", ctimes}, {"panel_width", cpanel}});
                const ModeData data = make_data(c, cdata, ck);
                ContourOptions opt;
                opt.density = dens;
                opt.panel_width = cpanel;
                opt.full_interval = cfull;
                opt.jobs = g.jobs;
                const double t_max = ctimes.empty() ? 0.0 : *std::max_element(ctimes.begin(), ctimes.end());
                const auto cache = build_density_cache(c.profile, c.partition, data, t_max, opt);
                const auto tr = contour_evolve(c.profile, data, cache, ctimes);
                json files = json::array();
                for (size_t j = 0; j < tr.times.size(); ++j) {
                    std::ostringstream s;
                    s << "y,psi_re,psi_im,rho_re,rho_im,omega_re,omega_im\n";
                    for (Eigen::Index i = 0; i < tr.grid.size(); ++i)
                        s << num(tr.grid(i)) << "," << num(tr.psi[j](i).real()) << "," << num(tr.psi[j](i).imag())
                          << "," << num(tr.rho[j](i).real()) << "," << num(tr.rho[j](i).imag()) << ","
                          << num(tr.omega[j](i).real()) << "," << num(tr.omega[j](i).imag()) << "\n";
                    char name[64];
                    std::snprintf(name, sizeof name, "snapshot_%03zu.csv", j);
                    out.write(name, s.str());
                    files.push_back({{"t", tr.times[j]}, {"file", name}});
                }
                double max_err = 0.0;
                for (const auto& sl : cache.slices) max_err = std::max(max_err, sl.extrapolation_error);
                out.write_json("trajectory.json", {{"k", ck},
                                                   {"source", tr.source},
                                                   {"snapshots", files},
                                                   {"quadrature_nodes", cache.quadrature.nodes.size()},
                                                   {"eps_ladder", dens.eps_ladder},
                                                   {"max_extrapolation_error", max_err}});
            } else if (mode == "evolve") {
                config.update({{"k", ek}, {"t_end", eend}, {"dt", edt}, {"probes", eprobes}});
                const ModeData data = make_data(c, edata, std::max(1, std::abs(ek)));
                EvolveOptions opt;
                opt.t_end = eend;
                opt.dt = edt;
                opt.sample_dt = esample;
                opt.store_fields_until = estore;
                opt.probes = eprobes;
                const auto ev = evolve(c.profile, ek, data.omega0, data.rho0, opt);
                out.write("norms.csv", norms_csv(ev.norms));
                json j = {{"dt", ev.dt}, {"poisson_residual", ev.poisson_residual}};
                if (ev.trajectory.times.size() >= 3) {
                    const auto d = duhamel_residual(ev.trajectory, c.profile);
                    j["duhamel_rho"] = d.rho;
                    j["duhamel_omega"] = d.omega;
                }
                out.write_json("evolve.json", j);
            } else if (mode == "spectrum") {
                config.update({{"k", sk}, {"nodes_per_side", snodes}});
                Box box = default_box(c.profile);
                if (sbox.size() == 4) box = {sbox[0], sbox[1], sbox[2], sbox[3]};
                const auto cnt = count_eigenvalues(c.profile, sk, box, snodes, sg, g.jobs);
                std::ostringstream s;
                s << "lambda_re,lambda_im,W_re,W_im,argument\n";
                for (const auto& n : cnt.scan)
                    s << num(n.lambda.real()) << "," << num(n.lambda.imag()) << "," << num(n.W.real()) << ","
                      << num(n.W.imag()) << "," << num(n.argument) << "\n";
                out.write("winding.csv", s.str());
                const auto band = essential_band(c.profile);
                out.write_json("spectrum.json", {{"box", {box.re_lo, box.re_hi, box.im_lo, box.im_hi}},
                                                 {"count", cnt.count},
                                                 {"winding", cnt.winding},
                                                 {"evaluations", cnt.evaluations},
                                                 {"essential_band", {band.lo, band.hi}}});
            } else if (mode == "compare") {
                if (mprobes.empty()) mprobes = default_probes(c);
                config.update({{"k", mk}, {"t_min", mtmin}, {"t_max", mtmax}, {"probes", mprobes}});
                const ModeData data = make_data(c, mdata, mk);
                EvolveOptions opt;
                opt.t_end = mtmax;
                opt.sample_dt = 0.05;
                opt.store_fields_until = 0.0;
                opt.probes = mprobes;
                const auto ev = evolve(c.profile, data, opt);
                CompareOptions copt;
                copt.t_min = mtmin;
                copt.t_max = mtmax;
                copt.tol = g.tol;
                std::vector<Quantity> qs(std::begin(kAllQuantities), std::end(kAllQuantities));
                const auto reports = compare(c.profile, c.partition, mk, ev.norms, qs, copt);
                for (const auto& r : reports)
                    if (!r.pass) status = 2;
                out.write_json("report.json", report_json(reports));
                std::ostringstream s;
                s << "probe_y,quantity,log_t,log_value\n";
                for (const auto& pr : ev.norms.probes) {
                    const std::vector<std::pair<const char*, const std::vector<double>*>> cols = {
                        {"vx", &pr.dpsi}, {"psi", &pr.psi}, {"rho", &pr.rho}, {"omega", &pr.omega}, {"dyrho", &pr.drho}};
                    for (const auto& [name, col] : cols)
                        for (size_t i = 0; i < ev.norms.times.size(); i += 20) {
                            const double t = ev.norms.times[i];
                            if (t < 1.0 || (*col)[i] <= 0.0) continue;
                            s << num(pr.y) << "," << name << "," << num(std::log(t)) << "," << num(std::log((*col)[i]))
                              << "\n";
                        }
                }
                out.write("loglog.csv", s.str());
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        status = 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        status = 1;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.is_open()) out.manifest(config, wall, status);
    return status;
}
