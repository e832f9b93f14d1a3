#pragma once

#include <atomic>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "circleflow/metricity.hpp"

namespace circleflow {

struct SweepGrid {
    double a_min = -3.0, a_max = 3.0, a_step = 0.06;
    double b_min = -3.0, b_max = 3.0, b_step = 0.06;

    long a_count() const { return count(a_min, a_max, a_step); }
    long b_count() const { return count(b_min, b_max, b_step); }

    void validate() const {
        if (!(a_step > 0) || !(b_step > 0))
            throw std::invalid_argument("sweep: steps must be positive");
        if (a_count() < 1 || b_count() < 1)
            throw std::invalid_argument("sweep: empty grid");
    }

  private:
    static long count(double lo, double hi, double step) {
        if (hi < lo) return 0;
        return static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    }
};

enum class SweepRoute { ZeroMeanFourier, FullGroup };

struct SweepCell {
    double a = 0.0;
    double b = 0.0;
    VerdictKind kind = VerdictKind::Undetermined;
    std::string summary;  // first witness fact or the undetermined reason
    bool computed = false;
};

namespace detail {

inline std::string summarize(const Verdict& v) {
    switch (v.kind) {
        case VerdictKind::Metric: return "b=2";
        case VerdictKind::NonMetric:
            return v.witness.empty() ? std::string()
                                     : v.witness.front().label + "=" + v.witness.front().value;
        default: return v.reason;
    }
}

}  // namespace detail

/// Classify every grid cell. Cells run on a bounded worker pool; results
/// are written into a preallocated array, so the output order (a-major,
/// then b) is deterministic no matter how execution interleaves. A cancel
/// flag (e.g. set from a signal handler) stops scheduling; cells already
/// classified keep their results and carry computed = true.
inline std::vector<SweepCell> sweep_classify(const SweepGrid& grid, SweepRoute route,
                                             const ClassifyOptions& opts = {},
                                             unsigned workers = 0,
                                             const std::atomic<bool>* cancel = nullptr) {
    grid.validate();
    const long na = grid.a_count(), nb = grid.b_count();
    std::vector<SweepCell> cells(static_cast<std::size_t>(na * nb));

    if (workers == 0)
        workers = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));

    std::atomic<long> next{0};
    auto work = [&]() {
        for (;;) {
            if (cancel && cancel->load(std::memory_order_relaxed)) return;
            long i = next.fetch_add(1);
            if (i >= na * nb) return;
            long ia = i / nb, ib = i % nb;
            double a = grid.a_min + static_cast<double>(ia) * grid.a_step;
            double b = grid.b_min + static_cast<double>(ib) * grid.b_step;
            Verdict v = route == SweepRoute::ZeroMeanFourier
                            ? classify_fourier_type(RealParam(a), RealParam(b), opts)
                            : classify_full_group(RealParam(a), RealParam(b), opts);
            cells[static_cast<std::size_t>(i)] =
                SweepCell{a, b, v.kind, detail::summarize(v), true};
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return cells;
}

inline std::string sweep_csv(const std::vector<SweepCell>& cells) {
    std::ostringstream os;
    os << "a,b,verdict,witness\n";
    for (const SweepCell& c : cells) {
        if (!c.computed) continue;
        std::string summary = c.summary;
        for (char& ch : summary)
            if (ch == ',' || ch == '\n') ch = ';';
        os << fmt_double(c.a) << ',' << fmt_double(c.b) << ',' << verdict_name(c.kind) << ','
           << summary << '\n';
    }
    return os.str();
}

/// Self-contained heat map: one rect per cell, three fixed colors, axis
/// labels. Pure geometry, no external renderer.
inline std::string sweep_svg(const SweepGrid& grid, const std::vector<SweepCell>& cells) {
    const long na = grid.a_count(), nb = grid.b_count();
    const double cell = 6.0, margin = 40.0;
    const double width = margin * 2 + cell * static_cast<double>(na);
    const double height = margin * 2 + cell * static_cast<double>(nb);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_double(width)
       << "\" height=\"" << fmt_double(height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (long ia = 0; ia < na; ++ia) {
        for (long ib = 0; ib < nb; ++ib) {
            const SweepCell& c = cells[static_cast<std::size_t>(ia * nb + ib)];
            if (!c.computed) continue;
            const char* fill = c.kind == VerdictKind::Metric      ? "#2f9e44"
                               : c.kind == VerdictKind::NonMetric ? "#c0392b"
                                                                  : "#b0b0b0";
            double x = margin + cell * static_cast<double>(ia);
            double y = margin + cell * static_cast<double>(nb - 1 - ib);
            os << "<rect x=\"" << fmt_double(x) << "\" y=\"" << fmt_double(y) << "\" width=\""
               << fmt_double(cell) << "\" height=\"" << fmt_double(cell) << "\" fill=\"" << fill
               << "\"/>\n";
        }
    }
    os << "<text x=\"" << fmt_double(width / 2) << "\" y=\"" << fmt_double(height - 8)
       << "\" font-size=\"12\" text-anchor=\"middle\">a</text>\n";
    os << "<text x=\"12\" y=\"" << fmt_double(height / 2)
       << "\" font-size=\"12\" text-anchor=\"middle\">b</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace circleflow
