// SPDX-License-Identifier: Apache-2.0
// Successive cancellation list decoding, optionally CRC-aided, with the
// convolution-tracking variant for PAC codes.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "polarcraft/sc_decoder.hpp"

namespace polarcraft {

enum class MetricMode { Exact, Approx };

struct SclOptions {
    int list_size = 8;
    MetricMode metric = MetricMode::Exact;
    LseMode lse_mode = LseMode::Exact;
};

namespace detail {

// Path metric increment for deciding bit u against conditional LLR l.
// Exact: log(1 + e^{-(1-2u) l}); Approx: |l| when u contradicts sign(l).
inline double metric_penalty(double l, uint8_t u, MetricMode mode) {
    if (mode == MetricMode::Approx) {
        uint8_t hard = l < 0.0 ? 1 : 0;
        return u == hard ? 0.0 : std::abs(l);
    }
    double t = (u ? -1.0 : 1.0) * l;  // agreement value
    if (t >= 0.0) return std::log1p(std::exp(-t));
    return -t + std::log1p(std::exp(t));
}

struct ListPathState {
    // llr[d] holds the LLRs of the active node at depth d (size n >> d);
    // left_bits[d] keeps the left child's codeword while the right child
    // is in flight; bits[d] receives the node's combined codeword.
    std::vector<std::vector<double>> llr;
    std::vector<BitVec> bits;
    std::vector<BitVec> left_bits;
    BitVec m_hat;
    BitVec conv_register;  // PAC only: last ell-1 source bits, newest first
    double metric = 0.0;
};

class ListEngine {
  public:
    ListEngine(const CodeSpec& spec, const SclOptions& opts)
        : spec_(spec), opts_(opts), frozen_(spec.frozen_mask()), depth_(log2_exact(spec.n)) {
        require(opts.list_size >= 1, "list size must be >= 1");
        pac_ = spec.family == CodeFamily::Pac;
    }

    DecodeResult run(const std::vector<double>& llrs) {
        require(static_cast<int>(llrs.size()) == spec_.n, "LLR vector length mismatch");
        paths_.clear();
        paths_.push_back(make_root(llrs));
        decode_node(0, 0);
        return pick_winner();
    }

  private:
    ListPathState make_root(const std::vector<double>& llrs) const {
        ListPathState p;
        p.llr.resize(depth_ + 1);
        p.bits.resize(depth_ + 1);
        p.left_bits.resize(depth_ + 1);
        for (int d = 0; d <= depth_; ++d) {
            p.llr[d].resize(static_cast<size_t>(spec_.n) >> d);
            p.bits[d].resize(static_cast<size_t>(spec_.n) >> d);
            p.left_bits[d].resize((static_cast<size_t>(spec_.n) >> d) / 2);
        }
        p.llr[0] = llrs;
        p.m_hat.assign(static_cast<size_t>(spec_.n), 0);
        if (pac_) p.conv_register.assign(spec_.pac_kernel.size() - 1, 0);
        return p;
    }

    void decode_node(int d, int leaf_offset) {
        const int len = spec_.n >> d;
        if (len == 1) {
            leaf_step(leaf_offset);
            return;
        }
        const int half = len / 2;
        for (auto& p : paths_)
            for (int i = 0; i < half; ++i)
                p.llr[d + 1][i] = lse(p.llr[d][i], p.llr[d][i + half], opts_.lse_mode);
        decode_node(d + 1, leaf_offset);
        for (auto& p : paths_) {
            p.left_bits[d] = p.bits[d + 1];
            for (int i = 0; i < half; ++i)
                p.llr[d + 1][i] =
                    p.llr[d][i] * (p.left_bits[d][i] ? -1.0 : 1.0) + p.llr[d][i + half];
        }
        decode_node(d + 1, leaf_offset + half);
        for (auto& p : paths_) {
            for (int i = 0; i < half; ++i) {
                p.bits[d][i] = p.left_bits[d][i] ^ p.bits[d + 1][i];
                p.bits[d][i + half] = p.bits[d + 1][i];
            }
        }
    }

    // The tree-level bit for source bit m_i; PAC applies the running
    // convolution, polar families pass m_i through.
    uint8_t tree_bit(const ListPathState& p, uint8_t m_bit) const {
        if (!pac_) return m_bit;
        uint8_t v = m_bit;  // kernel[0] == 1
        for (size_t j = 0; j < p.conv_register.size(); ++j)
            v ^= spec_.pac_kernel[j + 1] & p.conv_register[j];
        return v;
    }

    void commit_leaf(ListPathState& p, int leaf, uint8_t m_bit, uint8_t v_bit, double pen) {
        p.m_hat[leaf] = m_bit;
        p.bits[depth_][0] = v_bit;
        p.metric += pen;
        if (pac_ && !p.conv_register.empty()) {
            for (size_t j = p.conv_register.size() - 1; j > 0; --j)
                p.conv_register[j] = p.conv_register[j - 1];
            p.conv_register[0] = m_bit;
        }
    }

    void leaf_step(int leaf) {
        if (frozen_[leaf]) {
            for (auto& p : paths_) {
                uint8_t v = tree_bit(p, 0);
                double l = p.llr[depth_][0];
                commit_leaf(p, leaf, 0, v, metric_penalty(l, v, opts_.metric));
            }
            return;
        }
        struct Candidate {
            size_t parent;
            uint8_t m_bit;
            double metric;
        };
        std::vector<Candidate> cands;
        cands.reserve(2 * paths_.size());
        for (size_t pi = 0; pi < paths_.size(); ++pi) {
            double l = paths_[pi].llr[depth_][0];
            for (uint8_t m_bit = 0; m_bit < 2; ++m_bit) {
                uint8_t v = tree_bit(paths_[pi], m_bit);
                cands.push_back(
                    {pi, m_bit, paths_[pi].metric + metric_penalty(l, v, opts_.metric)});
            }
        }
        // stable sort keeps (parent index, bit) order on metric ties, which
        // pins down the surviving set deterministically
        std::stable_sort(cands.begin(), cands.end(),
                         [](const Candidate& a, const Candidate& b) { return a.metric < b.metric; });
        size_t keep = std::min<size_t>(opts_.list_size, cands.size());
        std::vector<ListPathState> next;
        next.reserve(keep);
        for (size_t c = 0; c < keep; ++c) {
            const Candidate& cand = cands[c];
            next.push_back(paths_[cand.parent]);
            ListPathState& p = next.back();
            double pen = cand.metric - paths_[cand.parent].metric;
            uint8_t v = tree_bit(p, cand.m_bit);
            p.metric = paths_[cand.parent].metric;
            commit_leaf(p, leaf, cand.m_bit, v, pen);
        }
        paths_ = std::move(next);
    }

    DecodeResult pick_winner() {
        size_t best = 0;
        if (spec_.family == CodeFamily::CrcPolar) {
            size_t best_crc = paths_.size();
            for (size_t i = 0; i < paths_.size(); ++i) {
                BitVec at_info = extract(paths_[i].m_hat, spec_);
                if (crc_check(at_info, spec_.crc_poly) &&
                    (best_crc == paths_.size() || paths_[i].metric < paths_[best_crc].metric))
                    best_crc = i;
            }
            best = best_crc != paths_.size() ? best_crc : lowest_metric();
        } else {
            best = lowest_metric();
        }
        DecodeResult result = detail::finish_from_m_hat(paths_[best].m_hat, spec_);
        result.path_metric = paths_[best].metric;
        return result;
    }

    size_t lowest_metric() const {
        size_t best = 0;
        for (size_t i = 1; i < paths_.size(); ++i)
            if (paths_[i].metric < paths_[best].metric) best = i;
        return best;
    }

    const CodeSpec& spec_;
    SclOptions opts_;
    std::vector<uint8_t> frozen_;
    int depth_;
    bool pac_ = false;
    std::vector<ListPathState> paths_;
};

}  // namespace detail

inline DecodeResult scl_decode(const std::vector<double>& llrs, const CodeSpec& spec,
                               const SclOptions& opts) {
    require(spec.family != CodeFamily::Pac, "PAC decoding goes through pac_sc_decode");
    detail::ListEngine engine(spec, opts);
    return engine.run(llrs);
}

inline DecodeResult scl_decode(const std::vector<double>& llrs, const CodeSpec& spec,
                               int list_size, MetricMode metric = MetricMode::Exact) {
    return scl_decode(llrs, spec, SclOptions{list_size, metric, LseMode::Exact});
}

// SCL over the polar tree with a per-path convolution register; the leaf
// constraint applies to m_i while the tree sees v_i = conv(c, m)_i.
inline DecodeResult pac_sc_decode(const std::vector<double>& llrs, const CodeSpec& spec,
                                  int list_size = 1,
                                  const SclOptions* opt_override = nullptr) {
    require(spec.family == CodeFamily::Pac, "pac_sc_decode needs a PAC spec");
    SclOptions opts = opt_override ? *opt_override : SclOptions{list_size, MetricMode::Exact, LseMode::Exact};
    if (!opt_override) opts.list_size = list_size;
    detail::ListEngine engine(spec, opts);
    return engine.run(llrs);
}

}  // namespace polarcraft
