#pragma once

#include <stdexcept>

#include "lamehardy/rational.hpp"

namespace lamehardy {

// Material pair (mu, lambda) with the admissibility gate mu > 0,
// lambda > -(2/3) mu, which makes 2 mu + lambda > 0 and keeps every derived
// coefficient finite and the two trace constants distinct (a != +/- b).
template <typename S>
struct BasicLameParams {
    S mu;
    S lambda;

    BasicLameParams(const S& mu_, const S& lambda_) : mu(mu_), lambda(lambda_) {
        if (!(mu > S(0)) || !(S(3) * lambda + S(2) * mu > S(0)))
            throw std::invalid_argument("LameParams: require mu > 0 and lambda > -(2/3) mu");
    }

    S a() const { return (mu + lambda) / S(2); }
    S b() const { return (S(3) * mu + lambda) / S(2); }
    S two_mu_lambda() const { return S(2) * mu + lambda; }
    S cI() const { return (mu + lambda) / (S(2) * mu * two_mu_lambda()); }
    S cH() const { return (S(3) * mu + lambda) / (S(2) * mu * two_mu_lambda()); }
};

using LameParams = BasicLameParams<double>;
using ExactLameParams = BasicLameParams<Rational>;

inline LameParams to_numeric(const ExactLameParams& p) {
    return LameParams(p.mu.to_double(), p.lambda.to_double());
}

} // namespace lamehardy
