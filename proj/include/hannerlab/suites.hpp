#ifndef HANNERLAB_SUITES_HPP
#define HANNERLAB_SUITES_HPP

#include "hannerlab/faces.hpp"
#include "hannerlab/flags.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hannerlab {

struct SuiteResult {
    std::string name;
    bool ok = true;
    std::vector<std::string> lines;  // one per check, failures name the offending face or flag
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t directions = 100;  // random Z per tree in the derivative suite
    std::size_t xi_samples = 20;   // random xi per identity in the derivative suite
    // Literal directional derivatives are cross-checked against the gradient up to this dimension.
    int literal_max_dim = 3;
    Fault fault = Fault::None;
};

// Rational with numerator in [-bound, bound] and denominator in [1, den].
Rat random_rat(std::mt19937_64& rng, long bound, long den);
// z_F uniformly from small rational combinations of the directions of A_F.
PointAssignment random_tangent_assignment(const FaceLattice& lattice, std::mt19937_64& rng);

SuiteResult suite_abc(const HannerExpr& h, Fault fault = Fault::None);
// Flag count, equal flag volumes with the exact total, and the product formula.
SuiteResult suite_equal_volumes(const HannerExpr& h, Fault fault = Fault::None);
// Vanishing first variation, the stability identity and the sum identity over flags through a face.
SuiteResult suite_derivative(const HannerExpr& h, const SuiteOptions& opt);
// CL-property and the graph round trip.
SuiteResult suite_cl(const HannerExpr& h);

// Names: abc, equal-volumes, derivative, cl, all.
std::vector<SuiteResult> run_suites(const HannerExpr& h, const std::string& name, const SuiteOptions& opt);

} // namespace hannerlab

#endif
