#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cellpipe/grid.hpp"

namespace cellpipe {

struct CrfParams {
    double gamma1 = 1.0;       // appearance kernel weight
    double gamma2 = 1.0;       // smoothness kernel weight
    double sigma_alpha = 5.0;  // appearance spatial bandwidth, voxels
    double sigma_beta = 0.1;   // appearance probability bandwidth
    double sigma_gamma = 3.0;  // smoothness spatial bandwidth, voxels
    std::vector<double> label_weights;  // per-label multiplier, empty = all 1
    int iterations = 3;
    double epsilon = 1e-6;  // unary clamp

    enum class Mode { Auto, Exact, Truncated };
    Mode mode = Mode::Auto;
    std::size_t exact_limit = 4096;  // auto: all-pairs messages up to this many voxels
    int q_bins = 12;                 // probability-axis bins for truncated filtering

    void validate() const;
    double weight(std::uint32_t label) const {
        return label < label_weights.size() ? label_weights[label] : 1.0;
    }
    bool uniform_weights() const;
};

// Per-voxel negative log probabilities, stored sparse: the watershed label
// carries max(1-q, eps) and every other label the clamped eps, renormalized
// per voxel before the -log.
struct UnaryField {
    GridDims dims;
    Spacing spacing;
    std::size_t class_count = 0;           // distinct labels in the input grid
    std::vector<std::uint32_t> assigned;   // watershed label per voxel
    std::vector<float> cost_assigned;      // -log P(assigned label)
    std::vector<float> cost_other;         // -log P(each other label)
};

UnaryField build_unary(const ProbabilityMap& prob, const LabelGrid& labels, const CrfParams& p);

// Feature vector f = <p, q> = (x, y, z, probability). Two-Gaussian mixture,
// symmetric in its arguments.
double pairwise_kernel(const std::array<double, 4>& fi, const std::array<double, 4>& fj,
                       const CrfParams& p);

// Exact Gibbs energy: sum of unaries plus the pairwise sum over all i < j
// with the Potts penalty. O(N^2) test oracle, guarded at N <= 4096.
double energy(const LabelGrid& labels, const UnaryField& unary, const ProbabilityMap& prob,
              const CrfParams& p);

struct MeanFieldStats {
    // max |sum of stored per-voxel marginals - 1| seen at any iteration
    double max_marginal_residual = 0.0;
    bool used_exact = false;
};

// Mean-field minimization of the Gibbs energy: synchronous updates against
// the previous iteration's marginals, final label = per-voxel argmax (held at
// the input label on exact ties, which makes gamma1 = gamma2 = 0 an identity).
// Message passing is all-pairs up to exact_limit voxels, otherwise truncated
// separable Gaussian filtering at radius 3*sigma with the probability axis
// handled by linear splat/slice over q_bins bins.
LabelGrid mean_field_refine(const ProbabilityMap& prob, const LabelGrid& labels,
                            const CrfParams& p, MeanFieldStats* stats = nullptr);

}  // namespace cellpipe
