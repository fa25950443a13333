#ifndef GENUS_ATSP_RNG_HPP
#define GENUS_ATSP_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace genus_atsp {

// mt19937_64 with hand-rolled bounded draws: the raw engine sequence is
// pinned by the standard, while library distributions are not, so this stays
// byte-reproducible across compilers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

    double uniform01() {
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[uniform_int(0, static_cast<int>(i) - 1)]);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace genus_atsp

#endif
