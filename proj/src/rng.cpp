#include "dodtest/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace dod {

std::vector<std::size_t> sample_without_replacement(Rng& g, std::size_t n, std::size_t k) {
    if (k > n) {
        throw std::invalid_argument("sample_without_replacement: k > n");
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + uniform_index(g, n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace dod
