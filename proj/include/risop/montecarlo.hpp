#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "risop/channel_geometry.hpp"
#include "risop/mg_fading.hpp"
#include "risop/outage.hpp"

namespace risop {

struct MCConfig {
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    std::uint64_t chunk_size = 1u << 16;
    unsigned workers = 0;  // 0 = auto; RIS_OUTAGE_THREADS overrides either way

    void validate() const;  // ConfigError
};

struct MCEstimate {
    double op_hat = 0.0;
    double std_error = 0.0;  // sqrt(p (1 - p) / n)
    std::uint64_t n = 0;
    std::uint64_t hits = 0;
    double elapsed = 0.0;  // seconds
    bool low_count = false;  // fewer than 10 outage events; the tail is not certified
};

struct CdfPoint {
    double x = 0.0;
    double cdf = 0.0;
    double std_error = 0.0;
};

/// Worker count actually used for `cfg`.
unsigned resolve_workers(const MCConfig& cfg);

/// Seed of the random stream owning chunk `chunk`.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);

MCEstimate simulate_op(const MGDistribution& d1, const MGDistribution& d2, int n_elements,
                       const std::optional<MisalignmentStats>& mis, const HardwareProfile& hw, double gamma,
                       double gamma_th, const MCConfig& cfg);

/// Empirical CDF of A (or of A h_g with misalignment) on a strictly increasing grid,
/// from one shared sample set.
std::vector<CdfPoint> simulate_cdf(const MGDistribution& d1, const MGDistribution& d2, int n_elements,
                                   const std::optional<MisalignmentStats>& mis, const std::vector<double>& grid,
                                   const MCConfig& cfg);

}  // namespace risop
