#include "lab/util.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <thread>

namespace lab {

double Rng::normal()
{
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; reject u1 == 0 so log() stays finite.
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  unsigned threads)
{
    if (n == 0) return;
    if (threads <= 1 || n < 2 * threads) {
        body(0, n);
        return;
    }
    const std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = t * chunk;
        if (lo >= n) break;
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

void write_csv(const std::string& path, const std::vector<CsvColumn>& cols)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open for writing: " + path);
    for (std::size_t c = 0; c < cols.size(); ++c)
        out << cols[c].name << (c + 1 < cols.size() ? "," : "\n");
    const std::size_t rows = cols.empty() ? 0 : cols[0].data->size();
    for (const auto& c : cols)
        if (c.data->size() != rows) throw config_error("csv columns of unequal length");
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out << fmt_double((*cols[c].data)[r]) << (c + 1 < cols.size() ? "," : "\n");
}

std::uint64_t fnv1a(const std::string& bytes)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace lab
