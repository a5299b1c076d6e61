#include "camedit/edit.hpp"

#include <algorithm>
#include <iomanip>
#include <stdexcept>

namespace camedit::edit {

void validate(const EditConfig& cfg) {
    if (cfg.stride < 1 || cfg.window < cfg.stride) throw std::invalid_argument("EDIT needs window >= stride >= 1");
    if (cfg.k < 0) throw std::invalid_argument("EDIT displacement limit k must be >= 0");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw std::invalid_argument("EDIT alpha must lie in (0,1)");
    if (cfg.min_points < 2) throw std::invalid_argument("EDIT min_points must be >= 2");
}

std::vector<int> window_origins(int extent, int window, int stride) {
    if (extent <= window) return {0};
    std::vector<int> origins;
    for (int o = 0; o + window <= extent; o += stride) origins.push_back(o);
    if (origins.back() != extent - window) origins.push_back(extent - window);
    return origins;
}

std::vector<WindowDecision> sweep_windows(const BinaryEdgeMap& map, const EditConfig& cfg) {
    validate(cfg);
    const int win_w = std::min(cfg.window, map.width());
    const int win_h = std::min(cfg.window, map.height());
    const auto xs = window_origins(map.width(), cfg.window, cfg.stride);
    const auto ys = window_origins(map.height(), cfg.window, cfg.stride);

    std::vector<WindowDecision> decisions;
    decisions.reserve(xs.size() * ys.size());
    PixelCoordSet local;
    for (int oy : ys) {
        for (int ox : xs) {
            WindowDecision decision;
            decision.origin = {ox, oy};
            decision.width = win_w;
            decision.height = win_h;
            local.clear();
            for (int y = 0; y < win_h; ++y) {
                for (int x = 0; x < win_w; ++x) {
                    if (map(ox + x, oy + y)) local.push_back({x, y});
                }
            }
            decision.points = local.size();
            if (local.size() >= static_cast<std::size_t>(cfg.min_points)) {
                decision.table = stats::build_table(local, cfg.k);
                decision.result = stats::independence_test(*decision.table, cfg.alpha, cfg.fisher_mode);
                decision.kept = decision.result->dependent;
            }
            decisions.push_back(decision);
        }
    }
    return decisions;
}

BinaryEdgeMap apply_decisions(const BinaryEdgeMap& map, const std::vector<WindowDecision>& decisions) {
    BinaryEdgeMap out(map.width(), map.height());
    for (const auto& d : decisions) {
        if (!d.kept) continue;
        for (int y = d.origin.y; y < d.origin.y + d.height; ++y) {
            for (int x = d.origin.x; x < d.origin.x + d.width; ++x) {
                if (map(x, y)) out.set(x, y, true);
            }
        }
    }
    return out;
}

BinaryEdgeMap edit_filter(const BinaryEdgeMap& map, const EditConfig& cfg) {
    return apply_decisions(map, sweep_windows(map, cfg));
}

void write_decisions(std::ostream& out, const std::vector<WindowDecision>& decisions) {
    out << "# origin_x origin_y points method p kept\n";
    for (const auto& d : decisions) {
        out << d.origin.x << ' ' << d.origin.y << ' ' << d.points << ' ';
        if (d.result) {
            out << stats::to_string(d.result->method) << ' ' << std::setprecision(17) << d.result->p;
        } else {
            out << "skipped -";
        }
        out << ' ' << (d.kept ? 1 : 0) << '\n';
    }
}

}  // namespace camedit::edit
