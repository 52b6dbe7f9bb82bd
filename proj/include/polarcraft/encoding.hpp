// SPDX-License-Identifier: Apache-2.0
// Plotkin-tree polar transform, message embedding, PAC convolutional
// precoding, CRC attachment and BPSK modulation.
#pragma once

#include <vector>

#include "polarcraft/code_spec.hpp"
#include "polarcraft/common.hpp"

namespace polarcraft {

struct Codeword {
    std::vector<double> symbols;  // each +1 or -1, symbols[i] = 1 - 2*x[i]
};

// Plotkin(u, v) = (u xor v, v).
inline BitVec plotkin(const BitVec& u, const BitVec& v) {
    require(u.size() == v.size(), "plotkin operands must have equal length");
    BitVec out(2 * u.size());
    for (size_t i = 0; i < u.size(); ++i) {
        out[i] = u[i] ^ v[i];
        out[i + u.size()] = v[i];
    }
    return out;
}

// Recursive Plotkin transform over the complete binary tree, leaves in
// natural order, left child on the xor branch. Self-inverse.
inline BitVec plotkin_tree(BitVec m) {
    const int n = static_cast<int>(m.size());
    require(is_power_of_two(n), "plotkin_tree length must be a power of two");
    for (int span = 2; span <= n; span *= 2) {
        int half = span / 2;
        for (int base = 0; base < n; base += span)
            for (int i = base; i < base + half; ++i) m[i] ^= m[i + half];
    }
    return m;
}

// Scatters u into the information positions of an n-length source vector.
inline BitVec embed(const BitVec& u, const CodeSpec& spec) {
    require(static_cast<int>(u.size()) == static_cast<int>(spec.info_set.size()),
            "message length must equal |info_set|");
    BitVec m(static_cast<size_t>(spec.n), 0);
    for (size_t j = 0; j < u.size(); ++j) m[spec.info_set[j] - 1] = u[j];
    return m;
}

inline BitVec extract(const BitVec& m, const CodeSpec& spec) {
    BitVec u(spec.info_set.size());
    for (size_t j = 0; j < u.size(); ++j) u[j] = m[spec.info_set[j] - 1];
    return u;
}

// Rate-1 convolution v_i = sum_j c_j m_{i-j+1} over GF(2), zero initial state.
inline BitVec pac_precode(const BitVec& m, const BitVec& kernel) {
    require(!kernel.empty() && kernel.front() == 1, "kernel must have leading bit 1");
    const int n = static_cast<int>(m.size());
    const int ell = static_cast<int>(kernel.size());
    BitVec v(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        uint8_t acc = 0;
        for (int j = 0; j < ell && j <= i; ++j) acc ^= kernel[j] & m[i - j];
        v[i] = acc;
    }
    return v;
}

// Inverse of pac_precode (feedback division); kernel[0] = 1 makes it causal.
inline BitVec pac_precode_inverse(const BitVec& v, const BitVec& kernel) {
    require(!kernel.empty() && kernel.front() == 1, "kernel must have leading bit 1");
    const int n = static_cast<int>(v.size());
    const int ell = static_cast<int>(kernel.size());
    BitVec m(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        uint8_t acc = v[i];
        for (int j = 1; j < ell && j <= i; ++j) acc ^= kernel[j] & m[i - j];
        m[i] = acc;
    }
    return m;
}

// Bit vectors as polynomials use element j for the coefficient of x^j;
// CRC polynomials are written highest degree first (0b1011 = x^3+x+1).
namespace detail {

inline BitVec crc_remainder(const BitVec& data, const BitVec& poly) {
    const int degree = crc_degree(poly);
    // work holds coefficients of data(x) * x^degree, lowest degree first
    std::vector<uint8_t> work(data.size() + static_cast<size_t>(degree), 0);
    for (size_t j = 0; j < data.size(); ++j) work[j + degree] = data[j];
    for (int d = static_cast<int>(work.size()) - 1; d >= degree; --d) {
        if (!work[d]) continue;
        for (int t = 0; t <= degree; ++t) work[d - t] ^= poly[t];
    }
    return BitVec(work.begin(), work.begin() + degree);
}

}  // namespace detail

// Systematic CRC codeword (u, r) with r = u(x) * x^deg mod poly.
inline BitVec crc_attach(const BitVec& u, const BitVec& poly) {
    BitVec r = detail::crc_remainder(u, poly);
    BitVec out = u;
    out.insert(out.end(), r.begin(), r.end());
    return out;
}

inline bool crc_check(const BitVec& word, const BitVec& poly) {
    const int degree = crc_degree(poly);
    require(static_cast<int>(word.size()) > degree, "CRC word shorter than checksum");
    BitVec payload(word.begin(), word.end() - degree);
    BitVec r = detail::crc_remainder(payload, poly);
    return std::equal(r.begin(), r.end(), word.end() - degree);
}

inline Codeword modulate(const BitVec& x) {
    Codeword cw;
    cw.symbols.resize(x.size());
    for (size_t i = 0; i < x.size(); ++i) cw.symbols[i] = 1.0 - 2.0 * x[i];
    return cw;
}

// Source vector (length n) -> codeword bits, per family.
inline BitVec encode_source(const BitVec& m, const CodeSpec& spec) {
    require(static_cast<int>(m.size()) == spec.n, "source vector length mismatch");
    if (spec.family == CodeFamily::Pac) return plotkin_tree(pac_precode(m, spec.pac_kernel));
    return plotkin_tree(m);
}

// Message bits -> codeword bits (k bits for Polar/Pac, k_m for CrcPolar).
inline BitVec encode_bits(const BitVec& u, const CodeSpec& spec) {
    require(static_cast<int>(u.size()) == spec.message_length(),
            "message length mismatch for this code family");
    if (spec.family == CodeFamily::CrcPolar)
        return encode_source(embed(crc_attach(u, spec.crc_poly), spec), spec);
    return encode_source(embed(u, spec), spec);
}

inline Codeword encode(const BitVec& u, const CodeSpec& spec) {
    return modulate(encode_bits(u, spec));
}

}  // namespace polarcraft
