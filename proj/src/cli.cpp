#include "lcentropy/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcentropy/applications.hpp"
#include "lcentropy/certifier.hpp"
#include "lcentropy/density_io.hpp"
#include "lcentropy/rearrangement.hpp"
#include "lcentropy/two_piece.hpp"

namespace lcentropy {

namespace {

std::uint64_t env_seed() {
    if (const char* s = std::getenv("LCENTROPY_SEED")) return std::strtoull(s, nullptr, 10);
    return 0x5eed5eedULL;
}

struct Output {
    std::ostream* stream;
    std::ofstream file;

    explicit Output(std::ostream& fallback, const std::string& path) : stream(&fallback) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw SpecError("cannot open output file '" + path + "'");
            stream = &file;
        }
    }
    std::ostream& os() { return *stream; }
};

nlohmann::json certificate_json(const FamilyCertificate& c) {
    nlohmann::json j;
    j["family"] = to_string(c.family);
    j["status"] = to_string(c.status);
    j["small_n_max"] = c.small_n_max;
    j["direct_check_to"] = c.direct_check_to;
    j["tail_threshold"] = c.tail_threshold;
    j["tail_regime_threshold"] = tail_regime_threshold(c.family);
    auto per_n = nlohmann::json::array();
    for (std::size_t n = 0; n < c.small_certs.size(); ++n) {
        const auto& cert = c.small_certs[n];
        nlohmann::json e;
        e["n"] = n;
        e["status"] = to_string(cert.status);
        e["exact_checked_to"] = cert.threshold;
        if (cert.witness) {
            e["witness_index"] = cert.witness->index;
            e["witness_value"] = to_string(cert.witness->value);
        }
        per_n.push_back(std::move(e));
    }
    j["small_n"] = std::move(per_n);
    j["min_minorant_n"] = c.min_minorant.index;
    j["min_minorant_value"] = to_string(c.min_minorant.value);
    j["tail"] = {{"status", to_string(c.tail_cert.status)},
                 {"from", c.tail_cert.n_min},
                 {"exact_checked_to", c.tail_cert.threshold},
                 {"detail", c.tail_cert.detail}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

int cmd_stats(const std::string& path, bool normalize, const std::string& out_path,
              std::ostream& out) {
    Density d = load_density(path);
    if (normalize) d = normalized(d);
    Output o(out, out_path);
    o.os() << stats_json(d).dump(2) << "\n";
    return 0;
}

int cmd_rearrange(const std::string& path, bool normalize, const std::string& out_path,
                  std::ostream& out) {
    Density d = load_density(path);
    if (normalize) d = normalized(d);
    const Density r = decreasing_rearrangement(d);
    nlohmann::json j;
    j["input_stats"] = stats_json(d);
    j["rearranged"] = to_json(r);
    j["rearranged_stats"] = stats_json(r);
    Output o(out, out_path);
    o.os() << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::vector<int>& grid, const std::vector<double>& box_vals,
               long long refine, int samples, int threads, const std::string& csv_path,
               const std::string& out_path, std::ostream& out) {
    ParamBox box{1.0, 6.0, 0.0, 5.0, -6.0, 0.0};
    if (!box_vals.empty()) {
        box = {box_vals[0], box_vals[1], box_vals[2], box_vals[3], box_vals[4], box_vals[5]};
    }
    const int na = grid[0], nx = grid[1], ny = grid[2];
    const SweepResult sweep = sweep_grid(box, na, nx, ny, threads);

    MinimizeResult refined{};
    refined.gap = sweep.min_gap;
    refined.argmin = sweep.argmin_gap;
    if (refine > 0) refined = minimize_gap(box, refine);

    // the transcription pin: 15 e^{2x} G with the quartic minorant substituted
    // must reproduce the polynomial expansion identically
    std::mt19937_64 rng(env_seed());
    std::uniform_real_distribution<double> ad(box.a_lo, std::max(box.a_lo, box.a_hi));
    std::uniform_real_distribution<double> xd(box.x_lo, std::max(box.x_lo, box.x_hi));
    std::uniform_real_distribution<double> yd(box.y_lo, std::max(box.y_lo, box.y_hi));
    double identity_max_err = 0.0;
    bool dominance_ok = true;
    for (int i = 0; i < samples; ++i) {
        TwoPieceParams p{ad(rng), xd(rng), yd(rng)};
        if (p.x == 0.0 && p.y == 0.0) continue;
        const TwoPieceStats st = closed_form_stats(p);
        const double m = st.mass;
        const double gq = m * m * m * m * std::exp(-2.0 * p.x) *
                              quartic_minorant(exponent_L(p)) -
                          m * st.second_moment + st.first_moment * st.first_moment;
        const double lhs = 15.0 * std::exp(2.0 * p.x) * gq;
        const double rhs = poly_lower_bound(p);
        identity_max_err = std::max(
            identity_max_err, std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs)));
        const double full = 15.0 * std::exp(2.0 * p.x) * eval_G(p).G;
        if (full < rhs - 1e-9 * (1.0 + std::abs(rhs))) dominance_ok = false;
    }

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw SpecError("cannot open CSV file '" + csv_path + "'");
        csv << "a,x,y,gap,G,L\n";
        csv.precision(17);
        for (int ia = 0; ia < na; ++ia)
            for (int ix = 0; ix < nx; ++ix)
                for (int iy = 0; iy < ny; ++iy) {
                    const double a =
                        box.a_lo + (na > 1 ? (box.a_hi - box.a_lo) * ia / (na - 1) : 0.0);
                    const double x =
                        box.x_lo + (nx > 1 ? (box.x_hi - box.x_lo) * ix / (nx - 1) : 0.0);
                    const double y =
                        box.y_lo + (ny > 1 ? (box.y_hi - box.y_lo) * iy / (ny - 1) : 0.0);
                    if (x == 0.0 && y == 0.0) continue;
                    const TwoPieceParams p{a, x, y};
                    csv << a << ',' << x << ',' << y << ',' << gap_closed_form(p) << ','
                        << eval_G(p).G << ',' << exponent_L(p) << "\n";
                }
    }

    nlohmann::json j;
    j["min_gap"] = refined.gap;
    j["argmin"] = {{"a", refined.argmin.a}, {"x", refined.argmin.x}, {"y", refined.argmin.y}};
    j["grid_min_gap"] = sweep.min_gap;
    j["grid_argmin"] = {{"a", sweep.argmin_gap.a},
                        {"x", sweep.argmin_gap.x},
                        {"y", sweep.argmin_gap.y}};
    j["min_G"] = sweep.min_G;
    j["L_range"] = {sweep.L_min, sweep.L_max};
    j["identity_max_err"] = identity_max_err;
    j["identity_samples"] = samples;
    j["points"] = sweep.points;
    Output o(out, out_path);
    o.os() << j.dump(2) << "\n";

    const bool ok = sweep.min_gap >= -1e-9 && sweep.min_G >= -1e-9 && refined.gap >= -1e-9 &&
                    identity_max_err <= 1e-9 && dominance_ok && sweep.L_min >= 0.0 &&
                    sweep.L_max <= 2.0;
    return ok ? 0 : 1;
}

int cmd_certify(const std::string& family, const std::string& report_path, int threads,
                const std::string& out_path, std::ostream& out) {
    std::vector<FamilyCertificate> certs;
    if (family == "all") {
        certs = certify_all_families(threads);
    } else {
        const auto f = family_from_string(family);
        if (!f) throw CLI::ValidationError("--family", "unknown family '" + family + "'");
        certs.push_back(certify_family(*f));
    }
    nlohmann::json report = nlohmann::json::array();
    bool all_proven = true;
    Output o(out, out_path);
    for (const auto& c : certs) {
        all_proven = all_proven && c.proven();
        o.os() << to_string(c.family) << ": " << to_string(c.status)
               << " (small n <= " << c.small_n_max << ", exact minorants to "
               << c.tail_threshold << ", dominant tail beyond)\n";
        report.push_back(certificate_json(c));
    }
    if (!report_path.empty()) {
        std::ofstream rep(report_path);
        if (!rep) throw SpecError("cannot open report file '" + report_path + "'");
        rep << report.dump(2) << "\n";
    }
    return all_proven ? 0 : 1;
}

int cmd_constants(const std::vector<double>& alphas, const std::string& out_path,
                  std::ostream& out) {
    Output o(out, out_path);
    o.os() << "alpha,c_minus,c_plus,ratio\n";
    o.os().precision(15);
    for (double a : alphas) {
        const EpiConstants c = epi_constants(a);
        o.os() << a << ',' << c.c_minus << ',' << c.c_plus << ',' << c.ratio << "\n";
    }
    return 0;
}

int cmd_capacity(const std::string& path, double power, const std::string& out_path,
                 std::ostream& out) {
    const Density noise = load_density(path);
    const CapacityBounds b = capacity_bounds(noise, power);
    nlohmann::json j;
    j["gaussian_capacity"] = b.gaussian_capacity;
    j["upper"] = b.upper;
    j["relative_entropy"] = b.relative_entropy;
    j["ceiling"] = log_concave_gap_ceiling();
    Output o(out, out_path);
    o.os() << j.dump(2) << "\n";
    return 0;
}

int cmd_epi(const std::string& path1, const std::string& path2, int resolution,
            const std::string& out_path, std::ostream& out) {
    const Density d1 = load_density(path1), d2 = load_density(path2);
    const ReverseEpiCheck r = reverse_epi_check(d1, d2, resolution);
    const bool holds = r.n_sum >= r.epi_lower * (1.0 - 1e-6) &&
                       r.n_sum <= r.epi_upper * (1.0 + 1e-6);
    nlohmann::json j;
    j["entropy_power_sum"] = r.n_sum;
    j["epi_lower"] = r.epi_lower;
    j["epi_upper"] = r.epi_upper;
    j["holds"] = holds;
    Output o(out, out_path);
    o.os() << j.dump(2) << "\n";
    return holds ? 0 : 1;
}

int cmd_alpha_star(const std::string& out_path, std::ostream& out) {
    const double a = alpha_star();
    nlohmann::json j;
    j["alpha_star"] = a;
    j["residual"] = std::log(a) / (a - 1.0) - 0.5 * std::log(6.0);
    Output o(out, out_path);
    o.os() << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"entropy-variance toolkit for log-concave densities"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string out_path;
    app.add_option("--out", out_path, "write the primary report to a file");

    std::string spec_path, spec2_path, report_path, csv_path, family = "all";
    bool normalize = false;
    long long refine = 100000;
    int samples = 1000, threads = 1, resolution = 4096;
    double power = 1.0;
    std::vector<int> grid = {60, 60, 60};
    std::vector<double> box_vals;
    std::vector<double> alphas;

    auto* stats_cmd = app.add_subcommand("stats", "moments, entropy and gap of a density");
    stats_cmd->add_option("spec", spec_path, "density spec JSON (or - for stdin)")->required();
    stats_cmd->add_flag("--normalize", normalize, "normalize before computing");

    auto* re_cmd = app.add_subcommand("rearrange", "decreasing rearrangement of a density");
    re_cmd->add_option("spec", spec_path, "density spec JSON")->required();
    re_cmd->add_flag("--normalize", normalize, "normalize before rearranging");

    auto* verify_cmd =
        app.add_subcommand("verify-theorem", "sweep the entropy-variance gap and G over a box");
    verify_cmd->add_option("--grid", grid, "grid sizes na,nx,ny")->delimiter(',')->expected(3);
    verify_cmd->add_option("--box", box_vals, "a_lo,a_hi,x_lo,x_hi,y_lo,y_hi")
        ->delimiter(',')
        ->expected(6);
    verify_cmd->add_option("--refine", refine, "refinement budget (0 disables)");
    verify_cmd->add_option("--samples", samples, "identity sample count");
    verify_cmd->add_option("--threads", threads, "worker threads");
    verify_cmd->add_option("--csv", csv_path, "dump the sweep to CSV");

    auto* cert_cmd = app.add_subcommand("certify", "exact positivity certificates");
    cert_cmd->add_option("--family", family, "P0..P4 or all");
    cert_cmd->add_option("--report", report_path, "write the JSON certificate report");
    cert_cmd->add_option("--threads", threads, "worker threads");

    auto* const_cmd = app.add_subcommand("constants", "Renyi EPI constants table");
    const_cmd->add_option("--alpha", alphas, "orders > 1")->delimiter(',')->required();

    auto* cap_cmd = app.add_subcommand("capacity", "capacity sandwich for a noise density");
    cap_cmd->add_option("noise", spec_path, "noise density spec JSON")->required();
    cap_cmd->add_option("--power", power, "power budget")->required();

    auto* epi_cmd = app.add_subcommand("epi", "reverse EPI check for a pair of densities");
    epi_cmd->add_option("d1", spec_path, "first density")->required();
    epi_cmd->add_option("d2", spec2_path, "second density")->required();
    epi_cmd->add_option("--resolution", resolution, "convolution grid resolution");

    auto* astar_cmd = app.add_subcommand("alpha-star", "root of log(a)/(a-1) = log(6)/2");

    std::vector<std::string> argv = args;
    argv.insert(argv.begin(), "lcentropy");
    std::vector<const char*> cargv;
    for (const auto& a : argv) cargv.push_back(a.c_str());

    try {
        app.parse(int(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (stats_cmd->parsed()) return cmd_stats(spec_path, normalize, out_path, out);
        if (re_cmd->parsed()) return cmd_rearrange(spec_path, normalize, out_path, out);
        if (verify_cmd->parsed())
            return cmd_verify(grid, box_vals, refine, samples, threads, csv_path, out_path, out);
        if (cert_cmd->parsed()) return cmd_certify(family, report_path, threads, out_path, out);
        if (const_cmd->parsed()) return cmd_constants(alphas, out_path, out);
        if (cap_cmd->parsed()) return cmd_capacity(spec_path, power, out_path, out);
        if (epi_cmd->parsed()) return cmd_epi(spec_path, spec2_path, resolution, out_path, out);
        if (astar_cmd->parsed()) return cmd_alpha_star(out_path, out);
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SpecError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace lcentropy
