// SPDX-License-Identifier: Apache-2.0
// Successive cancellation decoding over the Plotkin tree.
#pragma once

#include <cmath>
#include <vector>

#include "polarcraft/code_spec.hpp"
#include "polarcraft/common.hpp"
#include "polarcraft/encoding.hpp"

namespace polarcraft {

enum class LseMode { Exact, MinSum };

namespace detail {

// Exact LSE over-/underflows if taken literally; clamping at +/-40 keeps
// every exp() in range without moving any decision threshold.
constexpr double kLlrClamp = 40.0;

inline double clamp_llr(double v) {
    if (v > kLlrClamp) return kLlrClamp;
    if (v < -kLlrClamp) return -kLlrClamp;
    return v;
}

inline double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace detail

// LSE(a,b) = log((1 + e^{a+b}) / (e^a + e^b)), evaluated in the stable form
// sign(a)sign(b)min(|a|,|b|) + log1p(e^{-|a+b|}) - log1p(e^{-|a-b|}).
inline double lse(double a, double b, LseMode mode) {
    if (mode == LseMode::MinSum)
        return std::min(std::abs(a), std::abs(b)) * detail::sign_of(a) * detail::sign_of(b);
    a = detail::clamp_llr(a);
    b = detail::clamp_llr(b);
    double base = std::min(std::abs(a), std::abs(b)) * detail::sign_of(a) * detail::sign_of(b);
    return base + std::log1p(std::exp(-std::abs(a + b))) - std::log1p(std::exp(-std::abs(a - b)));
}

struct DecodeResult {
    BitVec u_hat;                  // k bits (k_m payload for CrcPolar)
    BitVec m_hat;                  // n-length source vector estimate
    std::vector<double> bit_llrs;  // conditional LLR per information bit (SC only)
    double path_metric = 0.0;      // SCL only
    bool crc_pass = true;          // meaningful for CrcPolar only
};

namespace detail {

struct ScWork {
    const std::vector<uint8_t>* frozen;
    LseMode mode;
    BitVec m_hat;
    std::vector<double> leaf_llrs;

    // Decodes the subtree over leaves [offset, offset+len), consuming the
    // node LLRs in alpha; returns the subtree codeword bits in place.
    void decode(std::vector<double>& alpha, BitVec& beta, int offset) {
        const int len = static_cast<int>(alpha.size());
        if (len == 1) {
            double l = alpha[0];
            leaf_llrs[offset] = l;
            uint8_t bit = 0;
            if (!(*frozen)[offset]) bit = l < 0.0 ? 1 : 0;
            m_hat[offset] = bit;
            beta[0] = bit;
            return;
        }
        const int half = len / 2;
        std::vector<double> child(half);
        BitVec left(half), right(half);
        for (int i = 0; i < half; ++i) child[i] = lse(alpha[i], alpha[i + half], mode);
        decode(child, left, offset);
        for (int i = 0; i < half; ++i)
            child[i] = alpha[i] * (left[i] ? -1.0 : 1.0) + alpha[i + half];
        decode(child, right, offset + half);
        for (int i = 0; i < half; ++i) {
            beta[i] = left[i] ^ right[i];
            beta[i + half] = right[i];
        }
    }
};

inline DecodeResult finish_from_m_hat(BitVec m_hat, const CodeSpec& spec) {
    DecodeResult result;
    BitVec at_info = extract(m_hat, spec);
    if (spec.family == CodeFamily::CrcPolar) {
        result.crc_pass = crc_check(at_info, spec.crc_poly);
        result.u_hat.assign(at_info.begin(), at_info.begin() + spec.k_m);
    } else {
        result.u_hat = std::move(at_info);
    }
    result.m_hat = std::move(m_hat);
    return result;
}

}  // namespace detail

inline DecodeResult sc_decode(const std::vector<double>& llrs, const CodeSpec& spec,
                              LseMode mode = LseMode::Exact) {
    require(static_cast<int>(llrs.size()) == spec.n, "LLR vector length mismatch");
    require(spec.family != CodeFamily::Pac, "PAC decoding goes through pac_sc_decode");
    detail::ScWork work;
    auto frozen = spec.frozen_mask();
    work.frozen = &frozen;
    work.mode = mode;
    work.m_hat.assign(static_cast<size_t>(spec.n), 0);
    work.leaf_llrs.assign(static_cast<size_t>(spec.n), 0.0);
    std::vector<double> alpha = llrs;
    BitVec beta(static_cast<size_t>(spec.n));
    work.decode(alpha, beta, 0);
    DecodeResult result = detail::finish_from_m_hat(std::move(work.m_hat), spec);
    result.bit_llrs.reserve(spec.info_set.size());
    for (int i : spec.info_set) result.bit_llrs.push_back(work.leaf_llrs[i - 1]);
    return result;
}

}  // namespace polarcraft
