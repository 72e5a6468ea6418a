#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace lab {

// Invalid configuration / parameters: maps to CLI exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure at runtime (divergence, collision, vacuum...): CLI exit code 3.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic RNG. Gaussian draws use Box-Muller on top of mt19937_64 so that
// streams are reproducible across standard libraries (std::normal_distribution
// is implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform()  // [0,1)
    {
        return std::generate_canonical<double, 53>(gen_);
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal();

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Static-chunk parallel map over [0, n). Each index must write only its own
// outputs; chunk boundaries do not depend on the thread count, so results are
// bitwise identical for any `threads` >= 1.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  unsigned threads = 1);

// Shortest round-trip decimal formatting; used everywhere CSV/JSON bytes must
// be reproducible.
inline std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvColumn {
    std::string name;
    const std::vector<double>* data;
};

void write_csv(const std::string& path, const std::vector<CsvColumn>& cols);

// FNV-1a, for config provenance hashes in run records.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace lab
