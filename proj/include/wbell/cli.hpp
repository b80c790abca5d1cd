#ifndef WBELL_CLI_HPP
#define WBELL_CLI_HPP

#include <array>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wbell/boundaries.hpp"
#include "wbell/measures.hpp"
#include "wbell/scan.hpp"
#include "wbell/states.hpp"
#include "wbell/svg.hpp"
#include "wbell/types.hpp"

namespace wbell::cli {

// Exit code contract: 0 success, 1 usage error, 2 validation error,
// 3 invariant counterexample, 4 I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitIo = 4;

/// Parses one complex amplitude in `a+bj` form; pure-real inputs may omit
/// the imaginary part, pure-imaginary inputs may omit the real part ("0.5j").
inline cplx parse_complex(const std::string& text) {
    const std::string s = text;
    if (s.empty()) throw validation_error("empty complex number");
    const bool has_j = s.back() == 'j' || s.back() == 'J';
    const std::string body = has_j ? s.substr(0, s.size() - 1) : s;

    // Split at the last top-level +/- that is not an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        const char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const auto to_double = [&](const std::string& part) {
        if (part.empty() || part == "+" ) return part.empty() ? 0.0 : 1.0;
        if (part == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw validation_error("cannot parse number '" + part + "' in '" + text + "'");
        }
        if (used != part.size())
            throw validation_error("trailing characters in number '" + part + "' of '" + text + "'");
        return v;
    };

    if (!has_j) return cplx(to_double(body), 0.0);
    if (split == std::string::npos) return cplx(0.0, body.empty() ? 1.0 : to_double(body));
    return cplx(to_double(body.substr(0, split)), to_double(body.substr(split)));
}

inline std::array<cplx, 3> parse_amp_list(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = text.find(',', pos);
        parts.push_back(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (parts.size() != 3)
        throw validation_error("--amps needs exactly three comma-separated complex numbers");
    return {parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2])};
}

inline ExcitationSector parse_sector(const std::string& s) {
    if (s == "single") return ExcitationSector::Single;
    if (s == "double") return ExcitationSector::Double;
    throw validation_error("--sector must be 'single' or 'double'");
}

inline std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::uint64_t random_seed() {
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) ^ rd();
}

struct SeedOption {
    std::uint64_t value = 0;
    bool given = false;

    RngSeed resolve(std::ostream& out) {
        if (!given) value = random_seed();
        out << "seed: " << value << "\n";
        return RngSeed{value};
    }
};

inline int cmd_measure(const std::string& amps_text, const std::string& sector_text, bool json,
                       bool strict_norm, bool verify_paths, std::ostream& out) {
    const WClassState state =
        make_state(parse_amp_list(amps_text), parse_sector(sector_text), !strict_norm);
    const auto pm = all_pairs(state, verify_paths ? CrossCheck::on : CrossCheck::off);
    const Probabilities p = probabilities(state);
    const double m_sum = pm[0].m + pm[1].m + pm[2].m;

    if (json) {
        nlohmann::json doc;
        doc["sector"] = sector_text;
        doc["probabilities"] = {p.a, p.b, p.c};
        doc["m_sum"] = m_sum;
        auto& pairs = doc["pairs"] = nlohmann::json::array();
        for (std::size_t k = 0; k < 3; ++k)
            pairs.push_back({{"pair", all_pair_ids[k].label()},
                             {"m", pm[k].m},
                             {"c", pm[k].c},
                             {"n", pm[k].n},
                             {"e", pm[k].e},
                             {"violates", violates(pm[k].m)}});
        out << doc.dump(2) << "\n";
        return kExitOk;
    }

    out << "pair  M         C         N         E         violates\n";
    for (std::size_t k = 0; k < 3; ++k) {
        const PairId id = all_pair_ids[k];
        out << id.i << "-" << id.j << "   " << fixed6(pm[k].m) << "  " << fixed6(pm[k].c) << "  "
            << fixed6(pm[k].n) << "  " << fixed6(pm[k].e) << "  "
            << (violates(pm[k].m) ? "yes" : "no") << "\n";
    }
    out << "m_sum = " << fixed6(m_sum) << "\n";
    return kExitOk;
}

inline int cmd_sample(std::uint64_t n, SeedOption& seed, const std::string& sector_text,
                      const std::string& out_path, unsigned workers, double audit_fraction,
                      std::ostream& out) {
    const RngSeed s = seed.resolve(out);
    ScanConfig cfg{n, s, parse_sector(sector_text), audit_fraction, workers};
    RecordCsvWriter writer{std::filesystem::path(out_path)};
    run_scan(cfg, [&](std::uint64_t idx, const SampleRecord& rec) { writer.write(idx, rec); });
    out << "wrote " << n << " records to " << out_path << "\n";
    return kExitOk;
}

inline int cmd_boundary(const std::string& curve_name, double from, double to, int steps,
                        const std::string& out_path, std::ostream& out) {
    const BoundaryCurve* curve = find_curve(curve_name);
    if (!curve) {
        std::string names;
        for (const BoundaryCurve& c : boundary_curves()) names += "\n  " + c.name;
        throw validation_error("unknown curve '" + curve_name + "'; available:" + names);
    }
    if (steps < 1) throw validation_error("--steps must be at least 1");
    if (from < curve->x0 - 1e-12 || to > curve->x1 + 1e-12 || from > to)
        throw validation_error("requested range outside the curve domain [" +
                               detail::g17(curve->x0) + ", " + detail::g17(curve->x1) + "]");

    std::string body = "x,y\n";
    for (int k = 0; k <= steps; ++k) {
        const double x = from + (to - from) * double(k) / double(steps);
        body += detail::g17(x) + "," + detail::g17(curve->eval(std::clamp(x, curve->x0, curve->x1))) + "\n";
    }
    if (out_path.empty()) {
        out << body;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw io_error("cannot open for writing: " + out_path);
        f << body;
        if (!f) throw io_error("write failed: " + out_path);
    }
    return kExitOk;
}

inline int cmd_figure(const std::string& id_text, std::uint64_t n, SeedOption& seed,
                      const std::string& sector_text, const std::string& csv_path,
                      const std::string& svg_path, unsigned workers, double audit_fraction,
                      std::size_t max_points, std::ostream& out) {
    std::vector<FigureId> ids;
    if (id_text == "fig1") ids = {FigureId::fig1};
    else if (id_text == "fig2") ids = {FigureId::fig2a, FigureId::fig2b};
    else if (id_text == "fig2a") ids = {FigureId::fig2a};
    else if (id_text == "fig2b") ids = {FigureId::fig2b};
    else if (id_text == "fig3") ids = {FigureId::fig3};
    else if (id_text == "fig4") ids = {FigureId::fig4};
    else if (id_text == "fig5") ids = {FigureId::fig5};
    else if (id_text == "fig6") ids = {FigureId::fig6};
    else throw validation_error("--id must be one of fig1, fig2, fig2a, fig2b, fig3..fig6");

    const RngSeed s = seed.resolve(out);
    std::vector<FigureBuilder> builders;
    for (FigureId id : ids) builders.emplace_back(id);
    ScanConfig cfg{n, s, parse_sector(sector_text), audit_fraction, workers};
    run_scan(cfg, [&](std::uint64_t, const SampleRecord& rec) {
        for (FigureBuilder& b : builders) b.add(rec);
    });

    const bool two_panels = ids.size() > 1;
    for (std::size_t k = 0; k < builders.size(); ++k) {
        const FigureDataset ds = builders[k].finish();
        const std::string suffix = two_panels ? (k == 0 ? "_a" : "_b") : "";
        std::filesystem::path cp(csv_path);
        cp.replace_filename(cp.stem().string() + suffix + cp.extension().string());
        export_csv(ds, cp);
        out << "wrote " << cp.string() << " (+ curve files), " << ds.scatter.size()
            << " scatter points\n";
        if (!svg_path.empty()) {
            std::filesystem::path sp(svg_path);
            sp.replace_filename(sp.stem().string() + suffix + sp.extension().string());
            render_svg(ds, sp, 800, 600, max_points);
            out << "wrote " << sp.string() << "\n";
        }
    }
    return kExitOk;
}

inline int cmd_verify(std::uint64_t n, SeedOption& seed, const std::string& sector_text,
                      unsigned workers, double audit_fraction, bool json, std::ostream& out) {
    VerifyConfig cfg;
    cfg.n = n;
    cfg.seed = seed.resolve(out);
    cfg.sector = parse_sector(sector_text);
    cfg.audit_fraction = audit_fraction;
    cfg.workers = workers;
    cfg.duality_n = std::min<std::uint64_t>(n, 100000);
    const VerifyReport rep = run_verify(cfg);

    if (json) {
        nlohmann::json doc;
        doc["n"] = rep.n;
        doc["violating_states"] = rep.violating_states;
        doc["resolved_interval"] = rep.resolved_interval;
        auto& checks = doc["checks"] = nlohmann::json::array();
        for (const CheckResult& c : rep.checks)
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        doc["all_pass"] = rep.all_pass();
        out << doc.dump(2) << "\n";
    } else {
        out << "states: " << rep.n << ", violating: " << rep.violating_states << "\n";
        out << "resolved: " << rep.resolved_interval << "\n";
        for (const CheckResult& c : rep.checks)
            out << (c.pass ? "PASS " : "FAIL ") << c.name << " -- " << c.detail << "\n";
    }
    return rep.all_pass() ? kExitOk : kExitInvariant;
}

/// Builds the CLI, dispatches, and maps errors to the exit-code contract.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bell-CHSH nonlocality and entanglement measures for three-qubit W-class states"};
    app.require_subcommand(1);

    // measure
    auto* measure = app.add_subcommand("measure", "Per-pair M, C, N, E of one state");
    std::string amps_text, sector_text = "single";
    bool json = false, strict_norm = false, verify_paths = false;
    measure->add_option("--amps", amps_text,
                        "three comma-separated complex amplitudes 're+imj'\n"
                        "(single: C001,C010,C100; double: C011,C101,C110)")
        ->required();
    measure->add_option("--sector", sector_text, "single | double")->capture_default_str();
    measure->add_flag("--json", json, "machine-readable output");
    measure->add_flag("--strict-norm", strict_norm, "reject unnormalized amplitudes");
    measure->add_flag("--verify", verify_paths, "cross-check against the matrix path");

    // sample
    auto* sample = app.add_subcommand("sample", "Seeded Monte Carlo scan to CSV");
    std::uint64_t n = 1000000;
    SeedOption seed;
    std::string out_path;
    unsigned workers = 0;
    double audit_fraction = 1e-3;
    sample->add_option("--n", n, "number of states")->capture_default_str();
    sample->add_option("--seed", seed.value, "64-bit seed (default: randomized, echoed)")
        ->each([&](const std::string&) { seed.given = true; });
    sample->add_option("--sector", sector_text, "single | double")->capture_default_str();
    sample->add_option("--out", out_path, "output CSV path")->required();
    sample->add_option("--workers", workers, "worker threads (0 = all cores)")->capture_default_str();
    sample->add_option("--audit-fraction", audit_fraction, "matrix-path audit fraction")
        ->capture_default_str();

    // boundary
    auto* boundary = app.add_subcommand("boundary", "Sample an analytic boundary curve to CSV");
    std::string curve_name;
    double from = 0.0, to = 1.0;
    int steps = 100;
    std::string boundary_out;
    boundary->add_option("--curve", curve_name, "curve name (an unknown name lists the registry)")
        ->required();
    boundary->add_option("--from", from, "start of the x range")->required();
    boundary->add_option("--to", to, "end of the x range")->required();
    boundary->add_option("--steps", steps, "number of segments")->capture_default_str();
    boundary->add_option("--out", boundary_out, "output path (default: stdout)");

    // figure
    auto* figure = app.add_subcommand("figure", "Reproduce a region diagram as CSV (+SVG)");
    std::string fig_id, csv_path, svg_path;
    std::size_t max_points = 20000;
    figure->add_option("--id", fig_id, "fig1, fig2, fig2a, fig2b, fig3, fig4, fig5, fig6")->required();
    figure->add_option("--n", n, "number of states")->capture_default_str();
    figure->add_option("--seed", seed.value, "64-bit seed (default: randomized, echoed)")
        ->each([&](const std::string&) { seed.given = true; });
    figure->add_option("--sector", sector_text, "single | double")->capture_default_str();
    figure->add_option("--csv", csv_path, "scatter CSV path (curves to sibling files)")->required();
    figure->add_option("--svg", svg_path, "also render an SVG to this path");
    figure->add_option("--workers", workers, "worker threads (0 = all cores)")->capture_default_str();
    figure->add_option("--max-points", max_points, "scatter cap in the SVG (0 = all)")
        ->capture_default_str();

    // verify
    auto* verify = app.add_subcommand("verify", "Run the full invariant suite");
    verify->add_option("--n", n, "number of states")->capture_default_str();
    verify->add_option("--seed", seed.value, "64-bit seed (default: randomized, echoed)")
        ->each([&](const std::string&) { seed.given = true; });
    verify->add_option("--sector", sector_text, "single | double")->capture_default_str();
    verify->add_option("--workers", workers, "worker threads (0 = all cores)")->capture_default_str();
    verify->add_option("--audit-fraction", audit_fraction, "matrix-path audit fraction")
        ->capture_default_str();
    verify->add_flag("--json", json, "machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (measure->parsed())
            return cmd_measure(amps_text, sector_text, json, strict_norm, verify_paths, out);
        if (sample->parsed())
            return cmd_sample(n, seed, sector_text, out_path, workers, audit_fraction, out);
        if (boundary->parsed())
            return cmd_boundary(curve_name, from, to, steps, boundary_out, out);
        if (figure->parsed())
            return cmd_figure(fig_id, n, seed, sector_text, csv_path, svg_path, workers,
                              audit_fraction, max_points, out);
        if (verify->parsed())
            return cmd_verify(n, seed, sector_text, workers, audit_fraction, json, out);
    } catch (const consistency_error& e) {
        err << "invariant counterexample: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const io_error& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}

} // namespace wbell::cli

#endif // WBELL_CLI_HPP
