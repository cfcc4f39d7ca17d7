#pragma once

#include <cstdint>

#include "intraday/model.hpp"

namespace intraday {

double normal_pdf(double z);
double normal_upper_tail(double z); // Phi(-z)

// psi(z) = (z^2+1) Phi(-z) - z phi(z), second partial moment of the normal tail.
double psi(double z);
// psi~(z) = phi(z) - z Phi(-z), first partial moment of the normal tail.
double psi_tilde(double z);
// log psi(z), finite far beyond the underflow point of psi itself.
double log_psi(double z);

struct SpreadMoments {
    double mean = 0;
    double variance = 0;
};

struct ErrorBoundReport {
    double bound = 0;
    double shortfall_probability = 0;
    SpreadMoments moments;
    double mc_stderr = 0;
};

double mean_spread(double tau, double spread, double y, const ModelParams& p);

// Integral over [lo, hi] of the terminal-spread variance density.
double variance_spread_between(double lo, double hi, const ModelParams& p);
double variance_spread(double tau, const ModelParams& p);
// The integrand itself, for quadrature cross-checks.
double variance_density(double s, const ModelParams& p);

ErrorBoundReport error_bound(double tau, double spread, double y, const ModelParams& p);
// log of the bound; usable where the bound underflows.
double log_error_bound(double tau, double spread, double y, const ModelParams& p);

struct RateConstants {
    double time_to_go = 0; // limit of tau * log bound as tau -> 0
    double spread = 0;     // limit of log bound / spread^2
    double price = 0;      // limit of log bound / y^2
};
RateConstants asymptotic_rate_constants(double tau, double spread, double y, const ModelParams& p);

double mean_spread_jump(double tau, double spread, double y, const ModelParams& p,
                        const JumpParams& j);

ErrorBoundReport error_bound_jump(double tau, double spread, double y, const ModelParams& p,
                                  const JumpParams& j, std::uint64_t n_samples = 100000,
                                  std::uint64_t seed = 20240601);

} // namespace intraday
