#include "risop/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "risop/errors.hpp"
#include "risop/simd/kernels.hpp"

namespace risop {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void validate_channel(int n_elements) {
    if (n_elements < 1) throw ConfigError("montecarlo: n_elements must be positive");
}

// One chunk of channel realizations; buffers are reused across chunks by a worker.
class ChunkSimulator {
public:
    ChunkSimulator(const MGDistribution& d1, const MGDistribution& d2, int n_elements,
                   const std::optional<MisalignmentStats>& mis, std::size_t chunk)
        : s1_(d1), s2_(d2), n_elements_(n_elements), mis_(mis), a_(chunk), h_(chunk), g_(chunk) {}

    // Fills amplitudes() with `n` samples of A (times h_g with misalignment).
    void run(std::uint64_t seed, std::size_t n) {
        const auto& k = simd::active_kernels();
        Rng rng(seed);
        s1_.reset();
        s2_.reset();
        std::fill_n(a_.begin(), n, 0.0);
        for (int e = 0; e < n_elements_; ++e) {
            for (std::size_t i = 0; i < n; ++i) h_[i] = s1_(rng);
            for (std::size_t i = 0; i < n; ++i) g_[i] = s2_(rng);
            k.accumulate_products(a_.data(), h_.data(), g_.data(), n);
        }
        if (mis_) {
            for (std::size_t i = 0; i < n; ++i) h_[i] = sample_hg(*mis_, rng);
            k.scale(a_.data(), h_.data(), n);
        }
    }

    const double* amplitudes() const { return a_.data(); }

private:
    EnvelopeSampler s1_, s2_;
    int n_elements_;
    std::optional<MisalignmentStats> mis_;
    std::vector<double> a_, h_, g_;
};

// Runs `body(worker_state, chunk_index, chunk_len)` over all chunks on a pool of jthreads.
template <class MakeState, class Body>
void for_each_chunk(const MCConfig& cfg, MakeState&& make_state, Body&& body) {
    const std::uint64_t chunks = (cfg.samples + cfg.chunk_size - 1) / cfg.chunk_size;
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(cfg), chunks));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto work = [&] {
        try {
            auto state = make_state();
            for (std::uint64_t c = next++; c < chunks && !failed; c = next++) {
                const std::uint64_t begin = c * cfg.chunk_size;
                body(state, c, static_cast<std::size_t>(std::min(cfg.chunk_size, cfg.samples - begin)));
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

void MCConfig::validate() const {
    if (samples == 0) throw ConfigError("montecarlo: samples must be positive");
    if (chunk_size == 0) throw ConfigError("montecarlo: chunk_size must be positive");
}

unsigned resolve_workers(const MCConfig& cfg) {
    if (const char* env = std::getenv("RIS_OUTAGE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    if (cfg.workers > 0) return cfg.workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) { return splitmix64(splitmix64(seed) ^ chunk); }

MCEstimate simulate_op(const MGDistribution& d1, const MGDistribution& d2, int n_elements,
                       const std::optional<MisalignmentStats>& mis, const HardwareProfile& hw, double gamma,
                       double gamma_th, const MCConfig& cfg) {
    cfg.validate();
    validate_channel(n_elements);
    hw.validate();
    if (!(gamma > 0.0) || !(gamma_th > 0.0)) throw ConfigError("montecarlo: gamma and gamma_th must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    const double k2 = hw.kappa_s * hw.kappa_s + hw.kappa_d * hw.kappa_d;

    const std::uint64_t chunks = (cfg.samples + cfg.chunk_size - 1) / cfg.chunk_size;
    std::vector<std::uint64_t> counts(chunks, 0);
    for_each_chunk(
        cfg, [&] { return ChunkSimulator(d1, d2, n_elements, mis, cfg.chunk_size); },
        [&](ChunkSimulator& sim, std::uint64_t c, std::size_t len) {
            sim.run(chunk_seed(cfg.seed, c), len);
            counts[c] = simd::active_kernels().count_outages(sim.amplitudes(), len, gamma, k2, gamma_th);
        });

    MCEstimate e;
    e.n = cfg.samples;
    for (auto c : counts) e.hits += c;
    e.op_hat = double(e.hits) / double(e.n);
    e.std_error = std::sqrt(e.op_hat * (1.0 - e.op_hat) / double(e.n));
    e.low_count = e.hits < 10;
    e.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

std::vector<CdfPoint> simulate_cdf(const MGDistribution& d1, const MGDistribution& d2, int n_elements,
                                   const std::optional<MisalignmentStats>& mis, const std::vector<double>& grid,
                                   const MCConfig& cfg) {
    cfg.validate();
    validate_channel(n_elements);
    if (grid.empty()) throw ConfigError("simulate_cdf: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0) || (i > 0 && !(grid[i] > grid[i - 1])))
            throw ConfigError("simulate_cdf: grid must be non-negative and strictly increasing");
    }

    const std::uint64_t chunks = (cfg.samples + cfg.chunk_size - 1) / cfg.chunk_size;
    std::vector<std::uint64_t> counts(chunks * grid.size(), 0);
    for_each_chunk(
        cfg, [&] { return ChunkSimulator(d1, d2, n_elements, mis, cfg.chunk_size); },
        [&](ChunkSimulator& sim, std::uint64_t c, std::size_t len) {
            sim.run(chunk_seed(cfg.seed, c), len);
            const auto& k = simd::active_kernels();
            for (std::size_t j = 0; j < grid.size(); ++j)
                counts[c * grid.size() + j] = k.count_at_or_below(sim.amplitudes(), len, grid[j]);
        });

    std::vector<CdfPoint> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        std::uint64_t hits = 0;
        for (std::uint64_t c = 0; c < chunks; ++c) hits += counts[c * grid.size() + j];
        const double p = double(hits) / double(cfg.samples);
        out[j] = {grid[j], p, std::sqrt(p * (1.0 - p) / double(cfg.samples))};
    }
    return out;
}

}  // namespace risop
