#pragma once

#include <span>
#include <vector>

#include "waso/sampling.hpp"

namespace waso {

/// p_start = 1, every other entry (k-1)/(n-1).
SelectionProbabilityVector init_selection_probability(std::size_t n,
                                                      NodeId start,
                                                      std::size_t k);

struct SelectionUpdate {
  SelectionProbabilityVector p;
  double gamma{0.0};
  std::size_t elite{0};  // samples at or above gamma; 0 means p unchanged
};

/// Cross-entropy refit to the top-rho samples. gamma is the ceil(rho N)-th
/// largest willingness, never lower than `gamma_prev`; p_j is the share of
/// elite samples (W >= gamma) containing v_j. With no elite sample the
/// returned vector is `previous` unchanged.
SelectionUpdate update_selection_probability(
    std::span<const SampleVector> samples, double rho, double gamma_prev,
    std::span<const double> previous);

/// w * p_new + (1 - w) * p_old, elementwise.
SelectionProbabilityVector smooth(std::span<const double> p_new,
                                  std::span<const double> p_old, double w);

/// Squared distance between consecutive vectors.
double selection_change(std::span<const double> current,
                        std::span<const double> previous);

/// True when the vector has stalled (change below `threshold`) and the stage
/// should restart from the previous vector.
bool backtrack_check(std::span<const double> current,
                     std::span<const double> previous, double threshold);

}  // namespace waso
