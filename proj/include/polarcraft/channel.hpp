// SPDX-License-Identifier: Apache-2.0
// Channel simulation (AWGN, Rayleigh fading, Student-t) and LLR demodulation.
#pragma once

#include <cmath>
#include <vector>

#include <json.hpp>

#include "polarcraft/common.hpp"
#include "polarcraft/encoding.hpp"
#include "polarcraft/rng.hpp"

namespace polarcraft {

enum class ChannelKind { Awgn, Rayleigh, StudentT };

inline std::string channel_kind_name(ChannelKind k) {
    switch (k) {
        case ChannelKind::Awgn: return "awgn";
        case ChannelKind::Rayleigh: return "rayleigh";
        case ChannelKind::StudentT: return "student_t";
    }
    return "?";
}

inline ChannelKind channel_kind_from_name(const std::string& s) {
    if (s == "awgn") return ChannelKind::Awgn;
    if (s == "rayleigh") return ChannelKind::Rayleigh;
    if (s == "student_t") return ChannelKind::StudentT;
    throw std::invalid_argument("unknown channel kind: " + s);
}

// SNR = -10 log10 sigma^2, so sigma = 10^(-snr/20).
inline double snr_to_sigma(double snr_db) { return std::pow(10.0, -snr_db / 20.0); }
inline double sigma_to_snr(double sigma) { return -20.0 * std::log10(sigma); }

struct ChannelModel {
    ChannelKind kind = ChannelKind::Awgn;
    double sigma = 1.0;
    double nu = 3.0;  // StudentT only, > 2

    static ChannelModel awgn(double snr_db) { return {ChannelKind::Awgn, snr_to_sigma(snr_db), 3.0}; }
    static ChannelModel rayleigh(double snr_db) {
        return {ChannelKind::Rayleigh, snr_to_sigma(snr_db), 3.0};
    }
    static ChannelModel student_t(double snr_db, double nu = 3.0) {
        return {ChannelKind::StudentT, snr_to_sigma(snr_db), nu};
    }

    void validate() const {
        require(sigma > 0.0, "sigma must be positive");
        if (kind == ChannelKind::StudentT) require(nu > 2.0, "Student-t needs nu > 2");
    }
};

struct ReceivedWord {
    std::vector<double> samples;
    std::vector<double> fading_gains;  // present iff Rayleigh
};

inline ReceivedWord transmit(const Codeword& x, const ChannelModel& channel, Rng& rng) {
    channel.validate();
    const size_t n = x.symbols.size();
    ReceivedWord y;
    y.samples.resize(n);
    switch (channel.kind) {
        case ChannelKind::Awgn:
            for (size_t i = 0; i < n; ++i)
                y.samples[i] = x.symbols[i] + channel.sigma * rng.normal();
            break;
        case ChannelKind::Rayleigh:
            y.fading_gains.resize(n);
            for (size_t i = 0; i < n; ++i) {
                double a = rng.rayleigh_unit_power();
                y.fading_gains[i] = a;
                y.samples[i] = a * x.symbols[i] + channel.sigma * rng.normal();
            }
            break;
        case ChannelKind::StudentT: {
            // scaled to unit variance so sigma keeps its AWGN meaning
            const double scale = std::sqrt((channel.nu - 2.0) / channel.nu);
            for (size_t i = 0; i < n; ++i)
                y.samples[i] = x.symbols[i] + channel.sigma * scale * rng.student_t(channel.nu);
            break;
        }
    }
    return y;
}

// Coded-bit LLRs. Rayleigh assumes coherent detection with known gains;
// Student-t uses the Gaussian-mismatched rule on purpose (robustness
// experiments evaluate AWGN-trained decoders unchanged).
inline std::vector<double> llr(const ReceivedWord& y, const ChannelModel& channel) {
    channel.validate();
    const double inv_var = 1.0 / (channel.sigma * channel.sigma);
    std::vector<double> out(y.samples.size());
    if (channel.kind == ChannelKind::Rayleigh) {
        require(y.fading_gains.size() == y.samples.size(),
                "Rayleigh LLR needs the recorded fading gains");
        for (size_t i = 0; i < out.size(); ++i)
            out[i] = 2.0 * y.fading_gains[i] * y.samples[i] * inv_var;
        return out;
    }
    for (size_t i = 0; i < out.size(); ++i) out[i] = 2.0 * y.samples[i] * inv_var;
    return out;
}

inline nlohmann::json to_json(const ChannelModel& channel) {
    nlohmann::json j;
    j["kind"] = channel_kind_name(channel.kind);
    j["sigma"] = channel.sigma;
    j["snr_db"] = sigma_to_snr(channel.sigma);
    if (channel.kind == ChannelKind::StudentT) j["nu"] = channel.nu;
    return j;
}

inline ChannelModel channel_from_json(const nlohmann::json& j) {
    ChannelModel ch;
    ch.kind = channel_kind_from_name(j.value("kind", "awgn"));
    if (j.contains("sigma")) ch.sigma = j.at("sigma").get<double>();
    else ch.sigma = snr_to_sigma(j.at("snr_db").get<double>());
    if (j.contains("nu")) ch.nu = j.at("nu").get<double>();
    ch.validate();
    return ch;
}

}  // namespace polarcraft
