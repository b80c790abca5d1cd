#ifndef WBELL_SCAN_HPP
#define WBELL_SCAN_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wbell/boundaries.hpp"
#include "wbell/measures.hpp"
#include "wbell/states.hpp"
#include "wbell/types.hpp"

namespace wbell {

/// One sampled state: its probability triple, the measures of all three
/// pairs (order 12, 13, 23), the violating pair if there is one, and the sum
/// of the three nonlocality parameters.
struct SampleRecord {
    Probabilities probs;
    std::array<PairMeasures, 3> pairs;
    std::optional<PairId> violating_pair;
    double m_sum = 0.0;
};

/// Closed-form measures for a state plus the like-monogamy hard check: more
/// than one parameter above the violation threshold aborts the scan.
inline SampleRecord evaluate_state(const WClassState& s) {
    SampleRecord rec;
    rec.probs = probabilities(s);
    int n_violating = 0;
    std::size_t which = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        rec.pairs[k] = pair_measures(rec.probs, all_pair_ids[k]);
        detail::check_measure_ranges(rec.pairs[k], rec.probs);
        rec.m_sum += rec.pairs[k].m;
        if (violates(rec.pairs[k].m)) {
            ++n_violating;
            which = k;
        }
    }
    if (n_violating > 1)
        throw consistency_error("like-monogamy violated for probabilities " +
                                detail::triple_text(rec.probs));
    if (n_violating == 1) rec.violating_pair = all_pair_ids[which];
    return rec;
}

struct ScanConfig {
    std::uint64_t n = 1000000;
    RngSeed seed{};
    ExcitationSector sector = ExcitationSector::Single;
    double audit_fraction = 1e-3; // fraction of records re-verified via the matrix path
    unsigned workers = 0;         // 0 = available parallelism
};

using ScanSink = std::function<void(std::uint64_t, const SampleRecord&)>;

namespace detail {

inline std::uint64_t audit_period(double fraction) {
    if (fraction <= 0.0) return 0;
    return std::max<std::uint64_t>(1, std::uint64_t(std::llround(1.0 / fraction)));
}

inline void scan_chunk(const ScanConfig& cfg, std::uint64_t chunk, std::uint64_t period,
                       std::vector<SampleRecord>& buf) {
    buf.clear();
    SplitMix64 g(derive_chunk_seed(cfg.seed, chunk));
    const std::uint64_t begin = chunk * kSampleChunk;
    const std::uint64_t end = std::min(cfg.n, begin + kSampleChunk);
    for (std::uint64_t i = begin; i < end; ++i) {
        const WClassState s = sample_one(g, cfg.sector);
        if (period != 0 && i % period == 0) all_pairs(s, CrossCheck::on);
        buf.push_back(evaluate_state(s));
    }
}

} // namespace detail

/// Deterministic seeded scan. Chunks are generated independently from
/// derived seeds and emitted in chunk order, so the record stream is
/// byte-identical for any worker count.
inline void run_scan(const ScanConfig& cfg, const ScanSink& sink) {
    if (cfg.n == 0) return;
    const std::uint64_t chunks = (cfg.n + kSampleChunk - 1) / kSampleChunk;
    const std::uint64_t period = detail::audit_period(cfg.audit_fraction);
    unsigned workers = cfg.workers != 0 ? cfg.workers
                                        : std::max(1u, std::thread::hardware_concurrency());
    workers = unsigned(std::min<std::uint64_t>(workers, chunks));

    if (workers <= 1) {
        std::vector<SampleRecord> buf;
        for (std::uint64_t c = 0; c < chunks; ++c) {
            detail::scan_chunk(cfg, c, period, buf);
            for (std::size_t j = 0; j < buf.size(); ++j) sink(c * kSampleChunk + j, buf[j]);
        }
        return;
    }

    std::atomic<std::uint64_t> next{0};
    std::uint64_t emit_turn = 0;
    std::mutex mtx;
    std::condition_variable cv;
    std::exception_ptr first_error;
    bool abort = false;

    auto worker = [&] {
        std::vector<SampleRecord> buf;
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                detail::scan_chunk(cfg, c, period, buf);
                std::unique_lock<std::mutex> lk(mtx);
                cv.wait(lk, [&] { return abort || emit_turn == c; });
                if (abort) return;
                for (std::size_t j = 0; j < buf.size(); ++j) sink(c * kSampleChunk + j, buf[j]);
                ++emit_turn;
                cv.notify_all();
            } catch (...) {
                std::lock_guard<std::mutex> lk(mtx);
                if (!first_error) first_error = std::current_exception();
                abort = true;
                cv.notify_all();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline std::vector<SampleRecord> collect_scan(const ScanConfig& cfg) {
    std::vector<SampleRecord> out;
    out.reserve(cfg.n);
    run_scan(cfg, [&](std::uint64_t, const SampleRecord& r) { out.push_back(r); });
    return out;
}

// ---------------------------------------------------------------------------
// Empirical envelopes
// ---------------------------------------------------------------------------

enum class Quantity { nonlocality, concurrence, negativity, linear_entropy };

inline double quantity_of(const PairMeasures& pm, Quantity q) {
    switch (q) {
        case Quantity::nonlocality: return pm.m;
        case Quantity::concurrence: return pm.c;
        case Quantity::negativity: return pm.n;
        default: return pm.e;
    }
}

inline std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::nonlocality: return "M";
        case Quantity::concurrence: return "C";
        case Quantity::negativity: return "N";
        default: return "E";
    }
}

inline double quantity_max(Quantity q) { return q == Quantity::nonlocality ? 2.0 : 1.0; }

struct EnvelopeBin {
    double center = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
    std::uint64_t count = 0; // bins with count 0 carry no extremes
};

/// Streaming per-bin min/max accumulator over a fixed x interval.
class EnvelopeAccumulator {
public:
    EnvelopeAccumulator(double x0, double x1, int bins) : x0_(x0), x1_(x1) {
        if (bins < 10) throw validation_error("envelope needs at least 10 bins");
        if (!(x1 > x0)) throw validation_error("envelope needs a positive bin width");
        bins_.resize(std::size_t(bins));
        const double w = (x1_ - x0_) / double(bins);
        for (std::size_t b = 0; b < bins_.size(); ++b) bins_[b].center = x0_ + (double(b) + 0.5) * w;
    }

    void add(double x, double y) {
        const double w = (x1_ - x0_) / double(bins_.size());
        auto idx = std::int64_t((x - x0_) / w);
        idx = std::clamp<std::int64_t>(idx, 0, std::int64_t(bins_.size()) - 1);
        EnvelopeBin& bin = bins_[std::size_t(idx)];
        if (bin.count == 0) {
            bin.y_min = bin.y_max = y;
        } else {
            bin.y_min = std::min(bin.y_min, y);
            bin.y_max = std::max(bin.y_max, y);
        }
        ++bin.count;
    }

    const std::vector<EnvelopeBin>& bins() const { return bins_; }

private:
    double x0_, x1_;
    std::vector<EnvelopeBin> bins_;
};

struct Envelope {
    Quantity x_quantity = Quantity::linear_entropy;
    Quantity y_quantity = Quantity::nonlocality;
    std::vector<EnvelopeBin> bins;
};

enum class PointFilter { all_points, violating_only };

inline Envelope empirical_envelope(const std::vector<SampleRecord>& records, Quantity xq,
                                   Quantity yq, int bins,
                                   PointFilter filter = PointFilter::all_points) {
    EnvelopeAccumulator acc(0.0, quantity_max(xq), bins);
    for (const SampleRecord& rec : records)
        for (const PairMeasures& pm : rec.pairs) {
            if (filter == PointFilter::violating_only && !violates(pm.m)) continue;
            acc.add(quantity_of(pm, xq), quantity_of(pm, yq));
        }
    Envelope env;
    env.x_quantity = xq;
    env.y_quantity = yq;
    env.bins = acc.bins();
    return env;
}

// ---------------------------------------------------------------------------
// Figure datasets
// ---------------------------------------------------------------------------

enum class FigureId { fig1, fig2a, fig2b, fig3, fig4, fig5, fig6 };

inline std::string figure_name(FigureId id) {
    switch (id) {
        case FigureId::fig1: return "fig1";
        case FigureId::fig2a: return "fig2a";
        case FigureId::fig2b: return "fig2b";
        case FigureId::fig3: return "fig3";
        case FigureId::fig4: return "fig4";
        case FigureId::fig5: return "fig5";
        default: return "fig6";
    }
}

struct FigurePoint {
    double x = 0.0;
    double y = 0.0;
    bool violating = false;
};

struct FigureCurve {
    std::string name;
    CurveStyle style = CurveStyle::solid;
    std::vector<std::array<double, 2>> points;
};

struct FigureDataset {
    FigureId id = FigureId::fig1;
    std::string x_label;
    std::string y_label;
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    std::vector<FigurePoint> scatter;
    std::vector<FigureCurve> curves;
    std::vector<std::pair<std::string, std::string>> meta;
};

inline FigureCurve sample_curve(const BoundaryCurve& c, int samples = 257) {
    FigureCurve out;
    out.name = c.name;
    out.style = c.style;
    out.points.reserve(std::size_t(samples));
    for (int k = 0; k < samples; ++k) {
        const double x = c.x0 + (c.x1 - c.x0) * double(k) / double(samples - 1);
        out.points.push_back({x, c.eval(x)});
    }
    return out;
}

/// Streaming figure projector; add() consumes records, finish() attaches the
/// analytic curves and metadata.
class FigureBuilder {
public:
    explicit FigureBuilder(FigureId id) { ds_.id = id; }

    void add(const SampleRecord& rec) {
        const double m12 = rec.pairs[0].m, m13 = rec.pairs[1].m, m23 = rec.pairs[2].m;
        const bool state_violating = rec.violating_pair.has_value();
        switch (ds_.id) {
            case FigureId::fig1:
                push(m23, m12, state_violating);
                push(m13, m23, state_violating);
                push(m12, m13, state_violating);
                push(m13, m12, state_violating);
                push(m12, m23, state_violating);
                push(m23, m13, state_violating);
                break;
            case FigureId::fig2a:
                if (state_violating) {
                    push(m23, m12, true);
                    push(m13, m23, true);
                    push(m12, m13, true);
                }
                break;
            case FigureId::fig2b:
                if (state_violating) {
                    push(m13, m12, true);
                    push(m12, m23, true);
                    push(m23, m13, true);
                }
                break;
            case FigureId::fig3:
                for (const PairMeasures& pm : rec.pairs) push(pm.c, pm.n, violates(pm.m));
                break;
            case FigureId::fig4:
                for (const PairMeasures& pm : rec.pairs) push(pm.c, pm.e, violates(pm.m));
                break;
            case FigureId::fig5:
                for (const PairMeasures& pm : rec.pairs) push(pm.n, pm.e, violates(pm.m));
                break;
            case FigureId::fig6:
                for (const PairMeasures& pm : rec.pairs)
                    if (violates(pm.m)) push(pm.e, pm.m, true);
                break;
        }
        ++records_;
    }

    FigureDataset finish() {
        if (records_ == 0) throw validation_error("build_figure: empty record stream");
        attach_curves();
        return std::move(ds_);
    }

private:
    void push(double x, double y, bool violating) { ds_.scatter.push_back({x, y, violating}); }

    void add_curve(const std::string& name) {
        const BoundaryCurve* c = find_curve(name);
        if (c) ds_.curves.push_back(sample_curve(*c));
    }

    void add_segment(const std::string& name, CurveStyle style, double x0, double y0, double x1,
                     double y1) {
        ds_.curves.push_back(FigureCurve{name, style, {{x0, y0}, {x1, y1}}});
    }

    void attach_curves() {
        using namespace thresholds;
        switch (ds_.id) {
            case FigureId::fig1:
            case FigureId::fig2a:
            case FigureId::fig2b: {
                ds_.x_label = ds_.id == FigureId::fig2b ? "M_ik" : "M_jk";
                ds_.y_label = "M_ij";
                ds_.x_max = ds_.y_max = 2.0;
                add_curve("m_complement");
                add_curve("m_lower_boundary");
                if (ds_.id == FigureId::fig1) {
                    FigureCurve mirror = sample_curve(*find_curve("m_lower_boundary"));
                    mirror.name = "m_lower_boundary_mirror";
                    for (auto& p : mirror.points) std::swap(p[0], p[1]);
                    ds_.curves.push_back(std::move(mirror));
                    ds_.meta.emplace_back("points", "all six ordered (M_ab, M_cd) pairs per state");
                    ds_.meta.emplace_back("region_label", "per state: some pair violates");
                } else if (ds_.id == FigureId::fig2a) {
                    ds_.meta.emplace_back(
                        "pairing", "(x,y) = (M_jk, M_ij) over cyclic (i,j,k); shared qubit j");
                    ds_.meta.emplace_back("region_label", "violating states only");
                } else {
                    ds_.meta.emplace_back(
                        "pairing", "(x,y) = (M_ik, M_ij) over cyclic (i,j,k); shared qubit i");
                    ds_.meta.emplace_back("region_label", "violating states only");
                }
                break;
            }
            case FigureId::fig3:
                ds_.x_label = "C_ij";
                ds_.y_label = "N_ij";
                add_curve("negativity_violation_lower");
                add_segment("c_star_closure", CurveStyle::dot_dashed, c_star, n_one, c_star, n_two);
                add_curve("verstraete_min_negativity");
                add_curve("negativity_upper_diagonal");
                ds_.meta.emplace_back("region_label", "per pair: M_ij above one");
                break;
            case FigureId::fig4:
                ds_.x_label = "C_ij";
                ds_.y_label = "E_ij";
                add_curve("entropy_violation_vs_concurrence");
                add_segment("c_star_closure", CurveStyle::dot_dashed, c_star, 1.0 / 3.0, c_star,
                            e_star);
                add_curve("entropy_max_vs_concurrence");
                ds_.meta.emplace_back("region_label", "per pair: M_ij above one");
                break;
            case FigureId::fig5:
                ds_.x_label = "N_ij";
                ds_.y_label = "E_ij";
                add_curve("entropy_vs_negativity_m1");
                {
                    const BoundaryCurve* c = find_curve("entropy_vs_negativity_c_half");
                    BoundaryCurve clipped = *c;
                    clipped.x0 = n_one; // physically reachable part of the curve
                    ds_.curves.push_back(sample_curve(clipped));
                }
                add_curve("entropy_max_vs_negativity");
                ds_.meta.emplace_back("region_label", "per pair: M_ij above one");
                break;
            case FigureId::fig6:
                ds_.x_label = "E_ij";
                ds_.y_label = "M_ij";
                ds_.x_max = 2.0 / 3.0;
                ds_.y_max = 2.0;
                {
                    const BoundaryCurve* c = find_curve("m_max_vs_entropy");
                    BoundaryCurve clipped = *c;
                    clipped.x1 = e_star; // violating states end at e_star
                    ds_.curves.push_back(sample_curve(clipped));
                }
                ds_.meta.emplace_back("region_label", "violating pairs only");
                break;
        }
        ds_.meta.emplace_back("records", std::to_string(records_));
    }

    FigureDataset ds_;
    std::uint64_t records_ = 0;
};

inline FigureDataset build_figure(const std::vector<SampleRecord>& records, FigureId id) {
    FigureBuilder b(id);
    for (const SampleRecord& r : records) b.add(r);
    return b.finish();
}

// ---------------------------------------------------------------------------
// CSV export
// ---------------------------------------------------------------------------

namespace detail {

/// Locale-independent full-precision formatting; 17 significant digits
/// round-trip a double exactly.
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    return out;
}

} // namespace detail

inline const char* kRecordCsvHeader =
    "index,p_a,p_b,p_c,"
    "m_12,c_12,n_12,e_12,m_13,c_13,n_13,e_13,m_23,c_23,n_23,e_23,"
    "m_sum,violating_pair";

/// Streaming CSV writer for sample records; header on construction, one row
/// per record in index order.
class RecordCsvWriter {
public:
    explicit RecordCsvWriter(const std::filesystem::path& path)
        : path_(path), out_(detail::open_out(path)) {
        out_ << kRecordCsvHeader << "\n";
    }

    void write(std::uint64_t index, const SampleRecord& rec) {
        using detail::g17;
        out_ << index << ',' << g17(rec.probs.a) << ',' << g17(rec.probs.b) << ','
             << g17(rec.probs.c);
        for (const PairMeasures& pm : rec.pairs)
            out_ << ',' << g17(pm.m) << ',' << g17(pm.c) << ',' << g17(pm.n) << ',' << g17(pm.e);
        out_ << ',' << g17(rec.m_sum) << ','
             << (rec.violating_pair ? rec.violating_pair->label() : std::string("none")) << "\n";
        if (!out_) throw io_error("write failed: " + path_.string());
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

inline void export_csv(const std::vector<SampleRecord>& records, const std::filesystem::path& path) {
    RecordCsvWriter w(path);
    for (std::size_t i = 0; i < records.size(); ++i) w.write(i, records[i]);
}

/// Figure scatter goes to `path` (columns x, y, region); each attached curve
/// goes to a sibling file suffixed with the curve name.
inline void export_csv(const FigureDataset& ds, const std::filesystem::path& path) {
    using detail::g17;
    {
        std::ofstream out = detail::open_out(path);
        out << "# figure: " << figure_name(ds.id) << "\n";
        for (const auto& [k, v] : ds.meta) out << "# " << k << ": " << v << "\n";
        out << "x,y,region\n";
        for (const FigurePoint& p : ds.scatter)
            out << g17(p.x) << ',' << g17(p.y) << ',' << (p.violating ? "violating" : "fulfilling")
                << "\n";
        if (!out) throw io_error("write failed: " + path.string());
    }
    for (const FigureCurve& c : ds.curves) {
        std::filesystem::path cp = path;
        cp.replace_filename(path.stem().string() + "_" + c.name + path.extension().string());
        std::ofstream out = detail::open_out(cp);
        out << "x,y\n";
        for (const auto& p : c.points) out << g17(p[0]) << ',' << g17(p[1]) << "\n";
        if (!out) throw io_error("write failed: " + cp.string());
    }
}

// ---------------------------------------------------------------------------
// Invariant verification
// ---------------------------------------------------------------------------

struct VerifyConfig {
    std::uint64_t n = 1000000;
    RngSeed seed{42};
    ExcitationSector sector = ExcitationSector::Single;
    double audit_fraction = 1e-3;
    unsigned workers = 0;
    int bins = 200;
    std::uint64_t min_bin_count = 50; // bins below this are excluded from curve agreement
    std::uint64_t duality_n = 100000; // 0 skips the cross-sector comparison
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::string resolved_interval;
    std::uint64_t n = 0;
    std::uint64_t violating_states = 0;

    bool all_pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline VerifyReport run_verify(const VerifyConfig& cfg) {
    using namespace thresholds;
    VerifyReport rep;
    rep.n = cfg.n;

    struct Counter {
        std::uint64_t failures = 0;
        std::string example;
        void fail(const Probabilities& p) {
            if (failures++ == 0) example = detail::triple_text(p);
        }
    };
    Counter monogamy, conc_threshold, entropy_threshold, envelope_point, verstraete, ec_bound,
        region_cn, region_ce, eq28, eq16_locus;
    std::uint64_t partial_violations = 0;
    std::uint64_t eq28_boundary_skips = 0;
    double m_sum_min = 3.0;
    std::string m_sum_argmin;
    double eq16_near_sum_dev = 0.0;
    std::uint64_t eq16_near_count = 0;

    EnvelopeAccumulator em_env(0.0, 2.0 / 3.0, cfg.bins);
    EnvelopeAccumulator cn_env(0.0, 1.0, cfg.bins);
    EnvelopeAccumulator ce_env(0.0, c_star, cfg.bins);

    ScanConfig scan{cfg.n, cfg.seed, cfg.sector, cfg.audit_fraction, cfg.workers};
    run_scan(scan, [&](std::uint64_t, const SampleRecord& rec) {
        int n_above = 0;
        for (const PairMeasures& pm : rec.pairs)
            if (pm.m > 1.0 + 1e-9) ++n_above;
        if (n_above >= 2) monogamy.fail(rec.probs);
        if (rec.violating_pair) ++rep.violating_states;

        for (const PairMeasures& pm : rec.pairs) {
            const bool v = violates(pm.m);
            if (pm.c > c_star + 1e-9 && pm.m <= 1.0) conc_threshold.fail(rec.probs);
            if (v && pm.c <= c_star) ++partial_violations;
            if (v && pm.e >= e_star - 1e-9) entropy_threshold.fail(rec.probs);
            if (pm.m > m_max_vs_entropy(pm.e) + 1e-9) envelope_point.fail(rec.probs);
            if (pm.n > pm.c + 1e-9 || pm.n < verstraete_min_negativity(pm.c) - 1e-9)
                verstraete.fail(rec.probs);
            if (pm.c >= 0.5 && pm.e > (8.0 / 3.0) * (pm.c - pm.c * pm.c) + 1e-9)
                ec_bound.fail(rec.probs);
            if (v) {
                if (pm.c <= c_star && pm.n <= negativity_violation_lower(pm.c) - 1e-9)
                    region_cn.fail(rec.probs);
                const EntropyConcurrenceBounds eb = entropy_bounds_vs_concurrence(pm.c);
                if (eb.strict ? pm.e >= eb.violation_bound + 1e-9
                              : pm.e > eb.violation_bound + 1e-9)
                    region_ce.fail(rec.probs);
            }
            const RegionVerdict verdict = violation_region_vs_negativity(pm.n, pm.e);
            if (verdict == RegionVerdict::boundary || std::abs(pm.m - 1.0) <= 1e-12) {
                ++eq28_boundary_skips;
            } else if ((verdict == RegionVerdict::violating) != v) {
                eq28.fail(rec.probs);
            }
            em_env.add(pm.e, pm.m);
            cn_env.add(pm.c, pm.n);
            if (v && pm.c <= c_star) ce_env.add(pm.c, pm.e);
        }

        if (rec.m_sum < m_sum_min) {
            m_sum_min = rec.m_sum;
            m_sum_argmin = detail::triple_text(rec.probs);
        }
        if (rec.violating_pair) {
            const double m12 = rec.pairs[0].m, m13 = rec.pairs[1].m, m23 = rec.pairs[2].m;
            const double cyclic[3][2] = {{m23, m12}, {m13, m23}, {m12, m13}};
            for (const auto& point : cyclic) {
                if (point[0] >= m_jk_star) continue;
                const double bound = m_lower_boundary(point[0]);
                if (point[1] < bound - 1e-9) eq16_locus.fail(rec.probs);
                if (point[1] - bound < 0.002) {
                    eq16_near_sum_dev += std::abs(rec.m_sum - 2.0);
                    ++eq16_near_count;
                }
            }
        }
    });

    auto add_check = [&](const std::string& name, bool pass, const std::string& detail_text) {
        rep.checks.push_back({name, pass, detail_text});
    };
    auto zero_check = [&](const std::string& name, const Counter& c, const std::string& what) {
        add_check(name, c.failures == 0,
                  c.failures == 0 ? what + ": zero counterexamples"
                                  : what + ": " + std::to_string(c.failures) +
                                        " counterexamples, first triple " + c.example);
    };

    const std::uint64_t period = detail::audit_period(cfg.audit_fraction);
    add_check("cross-path audit", true,
              period == 0 ? "disabled"
                          : std::to_string((cfg.n + period - 1) / period) +
                                " records re-verified via the matrix path within 1e-9");
    zero_check("like-monogamy", monogamy, "two or more pairs with M > 1 + 1e-9");
    add_check("concurrence threshold", conc_threshold.failures == 0 && partial_violations > 0,
              conc_threshold.failures == 0
                  ? "no C > 1/sqrt(2) state fulfills; " + std::to_string(partial_violations) +
                        " violating pairs with C <= 1/sqrt(2)"
                  : "failures: " + std::to_string(conc_threshold.failures) + ", first triple " +
                        conc_threshold.example);
    zero_check("entropy threshold", entropy_threshold, "violating pair with E >= e_star - 1e-9");

    double em_gap = 0.0;
    for (const EnvelopeBin& b : em_env.bins())
        if (b.count >= cfg.min_bin_count)
            em_gap = std::max(em_gap, m_max_vs_entropy(b.center) - b.y_max);
    add_check("nonlocality envelope", envelope_point.failures == 0 && em_gap <= 0.02,
              envelope_point.failures == 0
                  ? "no point above the curve; max binned gap below curve = " +
                        detail::g17(em_gap)
                  : "points above curve: " + std::to_string(envelope_point.failures) +
                        ", first triple " + envelope_point.example);

    double cn_gap = 0.0;
    for (const EnvelopeBin& b : cn_env.bins())
        if (b.count >= cfg.min_bin_count)
            cn_gap = std::max(cn_gap, b.y_min - verstraete_min_negativity(b.center));
    add_check("verstraete bounds", verstraete.failures == 0 && cn_gap <= 0.02,
              verstraete.failures == 0
                  ? "N within [N_min(C), C]; max binned gap above lower curve = " +
                        detail::g17(cn_gap)
                  : "failures: " + std::to_string(verstraete.failures) + ", first triple " +
                        verstraete.example);

    double ce_dev = 0.0;
    for (const EnvelopeBin& b : ce_env.bins())
        if (b.count >= cfg.min_bin_count)
            ce_dev = std::max(ce_dev, std::abs(b.y_max - (2.0 / 3.0) * b.center * b.center));
    add_check("entropy-concurrence bound", ec_bound.failures == 0 && ce_dev <= 0.02,
              ec_bound.failures == 0
                  ? "E <= (8/3)(C - C^2) for C >= 1/2; violating-side boundary deviation = " +
                        detail::g17(ce_dev)
                  : "failures: " + std::to_string(ec_bound.failures) + ", first triple " +
                        ec_bound.example);

    add_check("region soundness (C,N) and (C,E)",
              region_cn.failures == 0 && region_ce.failures == 0,
              region_cn.failures == 0 && region_ce.failures == 0
                  ? "every violating pair lies on the violating side"
                  : "(C,N) failures: " + std::to_string(region_cn.failures) +
                        ", (C,E) failures: " + std::to_string(region_ce.failures) +
                        (region_cn.failures ? ", first triple " + region_cn.example
                                            : ", first triple " + region_ce.example));

    rep.resolved_interval = "middle branch holds on [N_I, N_II] = [" + detail::g17(n_one) + ", " +
                            detail::g17(n_two) + "] (N_I < N_II)";
    add_check("eq28 region classifier", eq28.failures == 0,
              eq28.failures == 0
                  ? rep.resolved_interval + "; zero misclassifications, " +
                        std::to_string(eq28_boundary_skips) + " boundary hits skipped"
                  : "misclassified: " + std::to_string(eq28.failures) + ", first triple " +
                        eq28.example);

    add_check("m-sum lower bound", m_sum_min >= 2.0 - 0.01,
              "empirical min of M_12+M_13+M_23 = " + detail::g17(m_sum_min) + " at triple " +
                  m_sum_argmin);
    add_check("eq16 lower locus", eq16_locus.failures == 0,
              eq16_locus.failures == 0
                  ? "no violating-state point below the curve; near-curve mean |m_sum - 2| = " +
                        (eq16_near_count ? detail::g17(eq16_near_sum_dev / double(eq16_near_count))
                                         : std::string("n/a")) +
                        " over " + std::to_string(eq16_near_count) + " points"
                  : "points below curve: " + std::to_string(eq16_locus.failures) +
                        ", first triple " + eq16_locus.example);

    const double id1 = std::abs(m_max_vs_entropy(e_star) - 1.0);
    const double id2 = std::abs(negativity_violation_bounds(c_star).lower - n_two);
    const double id3 = std::abs(verstraete_min_negativity(c_star) - n_one);
    add_check("threshold identities", id1 <= 1e-12 && id2 <= 1e-12 && id3 <= 1e-12,
              "|m_max(e_star)-1| = " + detail::g17(id1) + ", |bound(c_star)-N_II| = " +
                  detail::g17(id2) + ", |N_min(c_star)-N_I| = " + detail::g17(id3));

    if (cfg.duality_n > 0) {
        std::vector<std::array<double, 12>> single_stream;
        single_stream.reserve(cfg.duality_n);
        ScanConfig s1{cfg.duality_n, cfg.seed, ExcitationSector::Single, 0.0, cfg.workers};
        run_scan(s1, [&](std::uint64_t, const SampleRecord& rec) {
            std::array<double, 12> row{};
            for (std::size_t k = 0; k < 3; ++k) {
                row[4 * k] = rec.pairs[k].m;
                row[4 * k + 1] = rec.pairs[k].c;
                row[4 * k + 2] = rec.pairs[k].n;
                row[4 * k + 3] = rec.pairs[k].e;
            }
            single_stream.push_back(row);
        });
        std::uint64_t mismatches = 0;
        double worst = 0.0;
        ScanConfig s2{cfg.duality_n, cfg.seed, ExcitationSector::Double, 0.0, cfg.workers};
        run_scan(s2, [&](std::uint64_t idx, const SampleRecord& rec) {
            const std::array<double, 12>& row = single_stream[std::size_t(idx)];
            for (std::size_t k = 0; k < 3; ++k) {
                const double d = std::max({std::abs(rec.pairs[k].m - row[4 * k]),
                                           std::abs(rec.pairs[k].c - row[4 * k + 1]),
                                           std::abs(rec.pairs[k].n - row[4 * k + 2]),
                                           std::abs(rec.pairs[k].e - row[4 * k + 3])});
                worst = std::max(worst, d);
                if (d > 1e-12) ++mismatches;
            }
        });
        add_check("sector duality", mismatches == 0,
                  "double-sector scan over " + std::to_string(cfg.duality_n) +
                      " states, worst measure deviation = " + detail::g17(worst));
    }

    return rep;
}

} // namespace wbell

#endif // WBELL_SCAN_HPP
