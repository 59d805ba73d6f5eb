#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "code.hpp"

namespace aqc {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Quaternary Krawtchouk polynomial K_j(i) for length n.
inline BigInt krawtchouk(int n, int j, int i) {
    BigInt s = 0;
    for (int t = 0; t <= j; ++t) {
        BigInt term = binomial(i, t) * binomial(n - i, j - t) * boost::multiprecision::pow(BigInt(3), j - t);
        if (t & 1)
            s -= term;
        else
            s += term;
    }
    return s;
}

// B_j = (1/|C|) sum_i A_i K_j(i); throws when a B_j is negative or fractional.
inline std::vector<BigInt> macwilliams(const std::vector<BigInt>& A, int n, const BigInt& codeSize) {
    if (int(A.size()) > n + 1) throw std::invalid_argument("macwilliams: distribution longer than n+1");
    BigInt total = 0;
    for (const auto& a : A) total += a;
    if (total != codeSize) throw std::invalid_argument("macwilliams: counts do not sum to the code size");
    std::vector<BigInt> B(n + 1);
    for (int j = 0; j <= n; ++j) {
        BigInt s = 0;
        for (int i = 0; i < int(A.size()); ++i)
            if (A[i] != 0) s += A[i] * krawtchouk(n, j, i);
        if (s % codeSize != 0)
            throw std::domain_error("macwilliams: B_" + std::to_string(j) + " is not an integer");
        B[j] = s / codeSize;
        if (B[j] < 0) throw std::domain_error("macwilliams: B_" + std::to_string(j) + " is negative");
    }
    return B;
}

inline std::vector<BigInt> to_big(const WeightDistribution& wd) {
    return std::vector<BigInt>(wd.begin(), wd.end());
}

inline WeightDistribution macwilliams(const WeightDistribution& A, int n, std::uint64_t codeSize) {
    WeightDistribution out;
    for (const auto& b : macwilliams(to_big(A), n, BigInt(codeSize))) out.push_back(b.convert_to<std::uint64_t>());
    return out;
}

} // namespace aqc
