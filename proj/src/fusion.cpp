#include "dctfuse/fusion.hpp"

#include "dctfuse/error.hpp"

#include <algorithm>
#include <sstream>
#include <string>

namespace dctfuse {
namespace {

void require_same_grid(int r1, int c1, int r2, int c2, const char* what) {
    if (r1 == r2 && c1 == c2) return;
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": grid " + std::to_string(r1) + "x" + std::to_string(c1) +
                    " vs " + std::to_string(r2) + "x" + std::to_string(c2));
}

FocusMap measure(const CoeffBlockGrid& g, const GrayImage* pixels, const FusionConfig& cfg) {
    if (cfg.measure == FocusMeasure::SmlSpatial) {
        if (!pixels)
            throw Error(ErrorCode::InvalidArgument, "sml-spatial requires pixel-domain sources");
        return focus_map(g, *pixels, cfg.measure, cfg.spatialParams);
    }
    return focus_map(g, cfg.measure);
}

}  // namespace

std::string format_grid(const ValueGrid<int>& g) {
    std::string out;
    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
            if (c) out += ' ';
            out += std::to_string(g.at(r, c));
        }
        out += '\n';
    }
    return out;
}

ValueGrid<int> parse_grid(const std::string& text) {
    std::vector<std::vector<int>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream in(line);
        std::vector<int> row;
        std::string tok;
        while (in >> tok) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw Error(ErrorCode::InvalidArgument, "parse_grid: bad token '" + tok + "'");
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw Error(ErrorCode::InvalidArgument, "parse_grid: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return {};
    ValueGrid<int> g(int(rows.size()), int(rows.front().size()));
    for (int r = 0; r < g.rows; ++r)
        for (int c = 0; c < g.cols; ++c) g.at(r, c) = rows[std::size_t(r)][std::size_t(c)];
    return g;
}

void validate(const FusionConfig& cfg) {
    if (!(cfg.decisionThreshold >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "decision threshold must be >= 0");
    if (cfg.measure == FocusMeasure::SmlSpatial) validate(cfg.spatialParams);
}

DecisionMap decision_map(const FocusMap& fa, const FocusMap& fb, double t) {
    require_same_grid(fa.rows, fa.cols, fb.rows, fb.cols, "decision_map");
    if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "decision threshold must be >= 0");
    DecisionMap m(fa.rows, fa.cols);
    for (std::size_t i = 0; i < fa.size(); ++i) {
        const double a = fa.values[i];
        const double b = fb.values[i];
        m.values[i] = a > b + t ? 1 : (a < b - t ? -1 : 0);
    }
    return m;
}

RefinedMap consistency_verify(const DecisionMap& m) {
    RefinedMap s(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            int sum = 0;
            for (int dr = -1; dr <= 1; ++dr) {
                const int rr = r + dr;
                if (rr < 0 || rr >= m.rows) continue;
                for (int dc = -1; dc <= 1; ++dc) {
                    const int cc = c + dc;
                    if (cc < 0 || cc >= m.cols) continue;
                    sum += m.at(rr, cc);
                }
            }
            s.at(r, c) = sum;
        }
    }
    return s;
}

RefinedMap without_verification(const DecisionMap& m) {
    RefinedMap s(m.rows, m.cols);
    s.values = m.values;
    return s;
}

CoeffBlockGrid select_blocks(const CoeffBlockGrid& ga, const CoeffBlockGrid& gb,
                             const RefinedMap& s) {
    require_same_grid(ga.rows, ga.cols, gb.rows, gb.cols, "select_blocks");
    require_same_grid(ga.rows, ga.cols, s.rows, s.cols, "select_blocks");
    CoeffBlockGrid out(ga.rows, ga.cols);
    for (std::size_t i = 0; i < ga.size(); ++i) {
        const int v = s.values[i];
        if (v > 0) {
            out.blocks[i] = ga.blocks[i];
        } else if (v < 0) {
            out.blocks[i] = gb.blocks[i];
        } else {
            CoeffBlock& f = out.blocks[i];
            for (std::size_t k = 0; k < f.v.size(); ++k)
                f.v[k] = (ga.blocks[i].v[k] + gb.blocks[i].v[k]) / 2.0;
        }
    }
    return out;
}

CoefficientFusion fuse_coefficients(const CoeffBlockGrid& ga, const CoeffBlockGrid& gb,
                                    const FusionConfig& cfg, const GrayImage* pixelsA,
                                    const GrayImage* pixelsB) {
    validate(cfg);
    require_same_grid(ga.rows, ga.cols, gb.rows, gb.cols, "fuse");
    CoefficientFusion out;
    const FocusMap fa = measure(ga, pixelsA, cfg);
    const FocusMap fb = measure(gb, pixelsB, cfg);
    out.decision = decision_map(fa, fb, cfg.decisionThreshold);
    out.refined = cfg.consistencyVerification ? consistency_verify(out.decision)
                                              : without_verification(out.decision);
    out.fused = select_blocks(ga, gb, out.refined);
    return out;
}

PairFusion fuse_pair(const GrayImage& a, const GrayImage& b, const FusionConfig& cfg) {
    require_block_aligned(a, "source A");
    require_block_aligned(b, "source B");
    require_same_shape(a, b, "fuse_pair");
    const CoeffBlockGrid ga = forward_transform(a);
    const CoeffBlockGrid gb = forward_transform(b);
    CoefficientFusion cf = fuse_coefficients(ga, gb, cfg, &a, &b);
    return {inverse_transform(cf.fused), std::move(cf.decision), std::move(cf.refined)};
}

MultiFusion fuse_multi(std::span<const GrayImage> sources, const FusionConfig& cfg) {
    if (sources.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "fuse_multi: need at least two sources");
    validate(cfg);
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const std::string label = "source " + std::to_string(i);
        require_block_aligned(sources[i], label.c_str());
        require_same_shape(sources[0], sources[i], "fuse_multi");
    }

    std::vector<CoeffBlockGrid> grids;
    std::vector<FocusMap> maps;
    grids.reserve(sources.size());
    maps.reserve(sources.size());
    for (const GrayImage& s : sources) {
        grids.push_back(forward_transform(s));
        maps.push_back(measure(grids.back(), &s, cfg));
    }
    const int rows = grids.front().rows;
    const int cols = grids.front().cols;
    const int k = int(sources.size());

    ValueGrid<int> choice(rows, cols);
    for (std::size_t i = 0; i < choice.size(); ++i) {
        int best = 0;
        for (int s = 1; s < k; ++s)
            if (maps[std::size_t(s)].values[i] > maps[std::size_t(best)].values[i]) best = s;
        choice.values[i] = best;
    }

    if (cfg.consistencyVerification) {
        ValueGrid<int> voted(rows, cols);
        std::vector<int> count(static_cast<std::size_t>(k));
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                std::fill(count.begin(), count.end(), 0);
                for (int rr = std::max(r - 1, 0); rr <= std::min(r + 1, rows - 1); ++rr)
                    for (int cc = std::max(c - 1, 0); cc <= std::min(c + 1, cols - 1); ++cc)
                        ++count[std::size_t(choice.at(rr, cc))];
                int best = 0;
                for (int s = 1; s < k; ++s) {
                    const auto su = std::size_t(s);
                    const auto bu = std::size_t(best);
                    if (count[su] > count[bu] ||
                        (count[su] == count[bu] && maps[su].at(r, c) > maps[bu].at(r, c)))
                        best = s;
                }
                voted.at(r, c) = best;
            }
        }
        choice = std::move(voted);
    }

    CoeffBlockGrid fused(rows, cols);
    for (std::size_t i = 0; i < fused.size(); ++i)
        fused.blocks[i] = grids[std::size_t(choice.values[i])].blocks[i];
    return {inverse_transform(fused), std::move(choice)};
}

}  // namespace dctfuse
