// SPDX-License-Identifier: Apache-2.0
// Shared basic types and small helpers.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarcraft {

// Bits are stored one per byte at the API surface.
using BitVec = std::vector<uint8_t>;

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

inline int log2_exact(int n) {
    require(is_power_of_two(n), "block length must be a power of two");
    int p = 0;
    while ((1 << p) < n) ++p;
    return p;
}

// Parses "1011", "0b1011" or "0x1E" into a bit vector (most significant
// digit first for hex).
inline BitVec parse_bits(const std::string& s) {
    BitVec out;
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) {
        for (size_t i = 2; i < s.size(); ++i) {
            int v;
            char c = s[i];
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
            else throw std::invalid_argument("bad hex digit in bit string");
            for (int b = 3; b >= 0; --b) out.push_back((v >> b) & 1);
        }
        return out;
    }
    size_t start = s.rfind("0b", 0) == 0 ? 2 : 0;
    for (size_t i = start; i < s.size(); ++i) {
        if (s[i] == '0') out.push_back(0);
        else if (s[i] == '1') out.push_back(1);
        else throw std::invalid_argument("bad binary digit in bit string");
    }
    return out;
}

inline std::string format_bits(const BitVec& b) {
    std::string s;
    s.reserve(b.size());
    for (uint8_t v : b) s.push_back(v ? '1' : '0');
    return s;
}

// FNV-1a, used for config/spec provenance hashes.
inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace polarcraft
