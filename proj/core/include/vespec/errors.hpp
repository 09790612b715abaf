#pragma once

#include <stdexcept>
#include <string>

namespace vespec {

/// Base class for all solver errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Negative-order Riesz multiplier requested on a field with nonzero mean.
struct NegativeOrderOnNonzeroMean : Error {
    explicit NegativeOrderOnNonzeroMean(double relative_mean)
        : Error("negative-order multiplier on field with relative mean " +
                std::to_string(relative_mean)),
          relative_mean(relative_mean) {}
    double relative_mean;
};

/// Inverse Laplacian requested on a field with nonzero mean.
struct NonzeroMean : Error {
    explicit NonzeroMean(double relative_mean)
        : Error("inverse Laplacian on field with relative mean " +
                std::to_string(relative_mean)),
          relative_mean(relative_mean) {}
    double relative_mean;
};

/// A density (or density + 1) field failed the positivity requirement.
struct DensityNonpositive : Error {
    explicit DensityNonpositive(double minimum)
        : Error("density must stay positive, min = " + std::to_string(minimum)),
          minimum(minimum) {}
    double minimum;
};

/// Variable-coefficient pressure iteration failed to reach tolerance.
struct NoConvergence : Error {
    NoConvergence(int iterations, double residual)
        : Error("pressure iteration did not converge after " +
                std::to_string(iterations) +
                " iterations, residual = " + std::to_string(residual)),
          iterations(iterations), residual(residual) {}
    int iterations;
    double residual;
};

/// A time step violated a state invariant and was rejected.
struct StepRejected : Error {
    StepRejected(std::string why, double time)
        : Error("step rejected at t = " + std::to_string(time) + ": " + why),
          reason(std::move(why)), time(time) {}
    std::string reason;
    double time;
};

/// History updates must have strictly increasing snapshot times.
struct NonMonotoneTime : Error {
    using Error::Error;
};

/// Not enough samples for a statistical fit.
struct InsufficientData : Error {
    using Error::Error;
};

/// A field contains NaN or Inf.
struct FieldNotFinite : Error {
    using Error::Error;
};

}  // namespace vespec
