// SPDX-License-Identifier: Apache-2.0
// Code construction: Bhattacharyya reliability ranking for polar codes,
// Reed-Muller rate profiles for PAC codes, CRC outer-code specs.
// All index data at this surface is 1-based.
#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include <json.hpp>

#include "polarcraft/common.hpp"

namespace polarcraft {

enum class CodeFamily { Polar, Pac, CrcPolar };

inline std::string family_name(CodeFamily f) {
    switch (f) {
        case CodeFamily::Polar: return "polar";
        case CodeFamily::Pac: return "pac";
        case CodeFamily::CrcPolar: return "crc_polar";
    }
    return "?";
}

inline CodeFamily family_from_name(const std::string& s) {
    if (s == "polar") return CodeFamily::Polar;
    if (s == "pac") return CodeFamily::Pac;
    if (s == "crc_polar") return CodeFamily::CrcPolar;
    throw std::invalid_argument("unknown code family: " + s);
}

// Per-index Bhattacharyya parameters from the BEC recursion
// z- = 2z - z^2 (left branch), z+ = z^2 (right branch).
struct ReliabilityTable {
    std::vector<double> z_values;  // index i-1 holds z for leaf i
    double design_param = 0.5;
};

inline ReliabilityTable bec_reliability(int n, double z0) {
    require(is_power_of_two(n), "n must be a power of two");
    require(z0 > 0.0 && z0 < 1.0, "z0 must lie in (0,1)");
    ReliabilityTable table;
    table.design_param = z0;
    table.z_values.assign(static_cast<size_t>(n), z0);
    for (int span = n; span > 1; span /= 2) {
        for (int base = 0; base < n; base += span) {
            int half = span / 2;
            for (int i = base; i < base + half; ++i) {
                double z = table.z_values[i];
                table.z_values[i] = 2.0 * z - z * z;
                table.z_values[i + half] = z * z;
            }
        }
    }
    return table;
}

// Indices 1..n sorted least-reliable first. Ties break toward the larger
// index sitting later (more reliable).
inline std::vector<int> reliability_order_from(const std::vector<double>& z) {
    std::vector<int> order(z.size());
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (z[a - 1] != z[b - 1]) return z[a - 1] > z[b - 1];
        return a < b;
    });
    return order;
}

struct CodeSpec {
    CodeFamily family = CodeFamily::Polar;
    int n = 0;
    int k = 0;
    std::vector<int> info_set;           // sorted ascending, size k
    std::vector<int> reliability_order;  // permutation of 1..n, least reliable first
    BitVec pac_kernel;                   // Pac only; c[0] is the tap on m_i
    BitVec crc_poly;                     // CrcPolar only; highest degree first
    int k_m = 0;                         // CrcPolar payload length
    double z0 = 0.5;

    int message_length() const { return family == CodeFamily::CrcPolar ? k_m : k; }

    std::vector<uint8_t> frozen_mask() const {  // index 0 <-> leaf 1
        std::vector<uint8_t> frozen(static_cast<size_t>(n), 1);
        for (int i : info_set) frozen[i - 1] = 0;
        return frozen;
    }
};

namespace detail {

inline void validate_nk(int n, int k) {
    require(is_power_of_two(n), "n must be a power of two");
    require(k >= 1 && k <= n, "k must satisfy 1 <= k <= n");
}

inline std::vector<int> top_k_of(const std::vector<int>& order, int k) {
    std::vector<int> info(order.end() - k, order.end());
    std::sort(info.begin(), info.end());
    return info;
}

}  // namespace detail

inline CodeSpec build_polar_spec(int n, int k, double z0 = 0.5,
                                 const std::vector<int>* override_info = nullptr) {
    detail::validate_nk(n, k);
    ReliabilityTable table = bec_reliability(n, z0);
    CodeSpec spec;
    spec.family = CodeFamily::Polar;
    spec.n = n;
    spec.k = k;
    spec.z0 = z0;
    spec.reliability_order = reliability_order_from(table.z_values);
    if (override_info) {
        std::vector<int> info = *override_info;
        std::sort(info.begin(), info.end());
        require(static_cast<int>(info.size()) == k, "override must contain k indices");
        require(std::adjacent_find(info.begin(), info.end()) == info.end(),
                "override indices must be distinct");
        require(info.front() >= 1 && info.back() <= n, "override indices out of range");
        spec.info_set = std::move(info);
    } else {
        spec.info_set = detail::top_k_of(spec.reliability_order, k);
    }
    return spec;
}

inline CodeSpec build_pac_spec(int n, int k, const BitVec& kernel) {
    detail::validate_nk(n, k);
    require(!kernel.empty() && kernel.front() == 1,
            "PAC kernel must be nonempty with leading bit 1");
    CodeSpec spec;
    spec.family = CodeFamily::Pac;
    spec.n = n;
    spec.k = k;
    spec.pac_kernel = kernel;
    // Reed-Muller profile: rank index i by the Hamming weight of i-1.
    std::vector<double> weight(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        weight[i] = static_cast<double>(n) - __builtin_popcount(static_cast<unsigned>(i));
    spec.reliability_order = reliability_order_from(weight);
    spec.info_set = detail::top_k_of(spec.reliability_order, k);
    return spec;
}

inline int crc_degree(const BitVec& poly) {
    require(!poly.empty() && poly.front() == 1, "CRC polynomial must start with its leading 1");
    return static_cast<int>(poly.size()) - 1;
}

inline CodeSpec build_crc_polar_spec(int n, int k, const BitVec& crc_poly, double z0 = 0.5) {
    detail::validate_nk(n, k);
    int degree = crc_degree(crc_poly);
    require(degree < k, "CRC degree must be smaller than k");
    CodeSpec spec = build_polar_spec(n, k, z0);
    spec.family = CodeFamily::CrcPolar;
    spec.crc_poly = crc_poly;
    spec.k_m = k - degree;
    return spec;
}

// Information indices in increasing order of reliability (noisy to clean).
inline std::vector<int> n2c_order(const CodeSpec& spec) {
    require(spec.family == CodeFamily::Polar || spec.family == CodeFamily::CrcPolar,
            "N2C ordering is defined for polar reliability profiles");
    std::vector<uint8_t> is_info(static_cast<size_t>(spec.n) + 1, 0);
    for (int i : spec.info_set) is_info[i] = 1;
    std::vector<int> order;
    order.reserve(spec.info_set.size());
    for (int idx : spec.reliability_order)
        if (is_info[idx]) order.push_back(idx);
    return order;
}

inline nlohmann::json to_json(const CodeSpec& spec) {
    nlohmann::json j;
    j["family"] = family_name(spec.family);
    j["n"] = spec.n;
    j["k"] = spec.k;
    j["info_set"] = spec.info_set;
    j["reliability_order"] = spec.reliability_order;
    j["z0"] = spec.z0;
    if (spec.family == CodeFamily::Pac) j["pac_kernel"] = spec.pac_kernel;
    if (spec.family == CodeFamily::CrcPolar) {
        j["crc_poly"] = spec.crc_poly;
        j["k_m"] = spec.k_m;
    }
    return j;
}

inline CodeSpec spec_from_json(const nlohmann::json& j) {
    CodeFamily family = family_from_name(j.at("family").get<std::string>());
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    double z0 = j.value("z0", 0.5);
    CodeSpec spec;
    if (family == CodeFamily::Polar) {
        if (j.contains("info_set")) {
            std::vector<int> info = j.at("info_set").get<std::vector<int>>();
            spec = build_polar_spec(n, k, z0, &info);
        } else {
            spec = build_polar_spec(n, k, z0);
        }
    } else if (family == CodeFamily::Pac) {
        BitVec kernel = j.at("pac_kernel").get<BitVec>();
        spec = build_pac_spec(n, k, kernel);
    } else {
        BitVec poly = j.at("crc_poly").get<BitVec>();
        spec = build_crc_polar_spec(n, k, poly, z0);
        if (j.contains("info_set")) {
            std::vector<int> info = j.at("info_set").get<std::vector<int>>();
            CodeSpec polar = build_polar_spec(n, k, z0, &info);
            spec.info_set = polar.info_set;
        }
    }
    return spec;
}

inline uint64_t spec_hash(const CodeSpec& spec) { return fnv1a(to_json(spec).dump()); }

// Community-standard length-7 convolutional kernel; configurable everywhere.
inline BitVec default_pac_kernel() { return BitVec{1, 0, 1, 1, 0, 1, 1}; }

// x^3 + x + 1 and x^8 + x^2 + x + 1.
inline BitVec crc3_poly() { return BitVec{1, 0, 1, 1}; }
inline BitVec crc8_poly() { return BitVec{1, 0, 0, 0, 0, 0, 1, 1, 1}; }

}  // namespace polarcraft
