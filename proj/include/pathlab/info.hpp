#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace pathlab {

// Shannon entropy of a probability vector in bits; p log p -> 0 as p -> 0.
// Tolerates slightly unnormalized input (roundoff) but rejects negatives.
inline double shannon_bits(const Eigen::VectorXd& probs) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        const double p = probs[i];
        if (p < -1e-12)
            throw std::domain_error("shannon_bits: negative probability");
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

}  // namespace pathlab
