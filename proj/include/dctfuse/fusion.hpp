#pragma once

#include "dctfuse/block_transform.hpp"
#include "dctfuse/focus_measures.hpp"
#include "dctfuse/grid.hpp"
#include "dctfuse/image.hpp"

#include <span>
#include <vector>

namespace dctfuse {

/// Per-block choice: +1 take A, -1 take B, 0 undecided.
struct DecisionMap : ValueGrid<int> {
    using ValueGrid<int>::ValueGrid;
};

/// 3x3 neighbourhood sums of a DecisionMap; values in [-9, 9].
struct RefinedMap : ValueGrid<int> {
    using ValueGrid<int>::ValueGrid;
};

struct FusionConfig {
    FocusMeasure measure = FocusMeasure::SmlDct;
    double decisionThreshold = 0.0;
    bool consistencyVerification = true;
    SpatialSmlParams spatialParams{};
};

void validate(const FusionConfig& cfg);

/// M = +1 where fa > fb + t, -1 where fa < fb - t, 0 otherwise.
DecisionMap decision_map(const FocusMap& fa, const FocusMap& fb, double t);

/// S(i,j) = sum of M over the 3x3 neighbourhood including the centre.
/// Neighbours outside the grid count as 0.
RefinedMap consistency_verify(const DecisionMap& m);

/// Identity refinement used when consistency verification is disabled.
RefinedMap without_verification(const DecisionMap& m);

/// Per block: A if S > 0, B if S < 0, coefficient-wise (A + B) / 2 if S = 0.
CoeffBlockGrid select_blocks(const CoeffBlockGrid& ga, const CoeffBlockGrid& gb,
                             const RefinedMap& s);

struct CoefficientFusion {
    CoeffBlockGrid fused;
    DecisionMap decision;
    RefinedMap refined;
};

/// Focus measure, decision, verification and selection on already
/// transformed inputs. `pixelsA` / `pixelsB` are only read for sml-spatial.
CoefficientFusion fuse_coefficients(const CoeffBlockGrid& ga, const CoeffBlockGrid& gb,
                                    const FusionConfig& cfg, const GrayImage* pixelsA = nullptr,
                                    const GrayImage* pixelsB = nullptr);

struct PairFusion {
    GrayImage image;
    DecisionMap decision;
    RefinedMap refined;
};

/// Full two-source pipeline: blockwise DCT, fuse_coefficients, inverse DCT.
PairFusion fuse_pair(const GrayImage& a, const GrayImage& b, const FusionConfig& cfg = {});

struct MultiFusion {
    GrayImage image;
    ValueGrid<int> choice;  // source index per block
};

/// k-source generalisation: per block the source with the largest focus
/// measure wins (lowest index on ties). With verification on, each block
/// takes the most frequent choice in its in-grid 3x3 neighbourhood; equal
/// counts go to the candidate with the larger focus measure at that block,
/// then to the lower index. decisionThreshold is not used.
MultiFusion fuse_multi(std::span<const GrayImage> sources, const FusionConfig& cfg = {});

}  // namespace dctfuse
