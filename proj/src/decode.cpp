#include "nlturbo/decode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlturbo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double clamp_llr(double v, double cap) { return std::clamp(v, -cap, cap); }

inline double jacobian(double a, double b, bool exact) {
    if (a < b) std::swap(a, b);
    if (b == kNegInf) return a;
    return exact ? a + std::log1p(std::exp(b - a)) : a;
}

} // namespace

std::vector<double> channel_llr(const ChannelModel& channel, std::span<const uint8_t> received,
                                double llr_cap) {
    std::vector<double> llrs(received.size());
    switch (channel.kind) {
        case ChannelModel::Kind::z: {
            if (channel.p >= 1.0) throw std::invalid_argument("channel_llr: degenerate z channel");
            const double log_p = channel.p > 0.0 ? std::log(channel.p) : -llr_cap;
            for (size_t i = 0; i < received.size(); ++i)
                llrs[i] = received[i] ? clamp_llr(log_p, llr_cap) : llr_cap;
            break;
        }
        case ChannelModel::Kind::bsc: {
            const double q = channel.p;
            const double mag =
                q > 0.0 ? clamp_llr(std::log((1.0 - q) / q), llr_cap) : llr_cap;
            for (size_t i = 0; i < received.size(); ++i) llrs[i] = received[i] ? -mag : mag;
            break;
        }
        case ChannelModel::Kind::bbsc:
            throw std::invalid_argument(
                "channel_llr: bbsc observations are per-user; build a bsc model instead");
    }
    return llrs;
}

BcjrResult bcjr(const TableTrellis& trellis, std::span<const double> symbol_priors,
                std::span<const double> systematic_llrs, std::span<const double> parity_llrs,
                const DecoderConfig& config) {
    const int states = trellis.num_states();
    const int inputs = trellis.num_inputs();
    const int n = trellis.n();
    const int k = trellis.k();
    if (parity_llrs.size() % static_cast<size_t>(n) != 0)
        throw std::invalid_argument("bcjr: parity llr length not a multiple of n");
    const int steps = static_cast<int>(parity_llrs.size()) / n;
    const bool has_priors = !symbol_priors.empty();
    const bool has_sys = !systematic_llrs.empty();
    if (has_priors && symbol_priors.size() != static_cast<size_t>(steps) * inputs)
        throw std::invalid_argument("bcjr: prior length mismatch");
    if (has_sys && systematic_llrs.size() != static_cast<size_t>(steps) * k)
        throw std::invalid_argument("bcjr: systematic llr length mismatch");
    const bool exact = config.algorithm == DecoderConfig::Algorithm::log_map;

    // gamma(t, s, u) = input_term(t, u) + label_term(t, label(s, u)), where
    // a bit b with llr L contributes (1 - 2b) * L / 2.
    std::vector<double> input_term(static_cast<size_t>(steps) * inputs, 0.0);
    for (int t = 0; t < steps; ++t) {
        for (int u = 0; u < inputs; ++u) {
            double v = has_priors ? symbol_priors[static_cast<size_t>(t) * inputs + u] : 0.0;
            if (has_sys) {
                for (int j = 0; j < k; ++j) {
                    const double l = systematic_llrs[static_cast<size_t>(t) * k + j];
                    v += ((u >> (k - 1 - j)) & 1) ? -0.5 * l : 0.5 * l;
                }
            }
            input_term[static_cast<size_t>(t) * inputs + u] = v;
        }
    }
    const auto label_term = [&](int t, uint32_t label) {
        double v = 0.0;
        const double* l = parity_llrs.data() + static_cast<size_t>(t) * n;
        for (int j = 0; j < n; ++j) v += row_bit(label, n, j) ? -0.5 * l[j] : 0.5 * l[j];
        return v;
    };

    // Backward pass with a uniform final-state prior (codewords are not
    // terminated), normalized per step.
    std::vector<double> beta(static_cast<size_t>(steps + 1) * states, 0.0);
    for (int t = steps - 1; t >= 0; --t) {
        double* bt = beta.data() + static_cast<size_t>(t) * states;
        const double* bn = beta.data() + static_cast<size_t>(t + 1) * states;
        for (int s = 0; s < states; ++s) {
            double acc = kNegInf;
            for (int u = 0; u < inputs; ++u) {
                const TableTrellis::Step st = trellis.step(s, u);
                const double g =
                    input_term[static_cast<size_t>(t) * inputs + u] + label_term(t, st.output);
                acc = jacobian(acc, g + bn[st.next_state], exact);
            }
            bt[s] = acc;
        }
        const double m = *std::max_element(bt, bt + states);
        for (int s = 0; s < states; ++s) bt[s] -= m;
    }

    // Forward pass fused with the posterior computation.
    BcjrResult result;
    result.posterior.assign(static_cast<size_t>(steps) * inputs, 0.0);
    result.extrinsic.assign(static_cast<size_t>(steps) * inputs, 0.0);
    std::vector<double> alpha(static_cast<size_t>(states), kNegInf);
    std::vector<double> alpha_next(static_cast<size_t>(states));
    alpha[0] = 0.0;
    for (int t = 0; t < steps; ++t) {
        std::fill(alpha_next.begin(), alpha_next.end(), kNegInf);
        double* post = result.posterior.data() + static_cast<size_t>(t) * inputs;
        std::fill(post, post + inputs, kNegInf);
        const double* bn = beta.data() + static_cast<size_t>(t + 1) * states;
        for (int s = 0; s < states; ++s) {
            if (alpha[static_cast<size_t>(s)] == kNegInf) continue;
            for (int u = 0; u < inputs; ++u) {
                const TableTrellis::Step st = trellis.step(s, u);
                const double g =
                    input_term[static_cast<size_t>(t) * inputs + u] + label_term(t, st.output);
                const double path = alpha[static_cast<size_t>(s)] + g;
                alpha_next[static_cast<size_t>(st.next_state)] =
                    jacobian(alpha_next[static_cast<size_t>(st.next_state)], path, exact);
                post[u] = jacobian(post[u], path + bn[st.next_state], exact);
            }
        }
        double norm = kNegInf;
        for (int u = 0; u < inputs; ++u) norm = jacobian(norm, post[u], true);
        double* ext = result.extrinsic.data() + static_cast<size_t>(t) * inputs;
        double ext_norm = kNegInf;
        for (int u = 0; u < inputs; ++u) {
            post[u] -= norm;
            ext[u] = post[u] - input_term[static_cast<size_t>(t) * inputs + u];
            ext_norm = jacobian(ext_norm, ext[u], true);
        }
        for (int u = 0; u < inputs; ++u) ext[u] -= ext_norm;
        const double m = *std::max_element(alpha_next.begin(), alpha_next.end());
        for (int s = 0; s < states; ++s) alpha[static_cast<size_t>(s)] = alpha_next[static_cast<size_t>(s)] - m;
    }
    return result;
}

namespace {

// Re-inserts zeros at punctured positions of one encoder's parity stream.
std::vector<double> expand_parity(std::span<const double> punctured, const PuncturePattern& p,
                                  long raw_bits) {
    std::vector<double> full(static_cast<size_t>(raw_bits), 0.0);
    size_t src = 0;
    for (long i = 0; i < raw_bits; ++i)
        if (!p.punctured(i)) full[static_cast<size_t>(i)] = punctured[src++];
    if (src != punctured.size())
        throw std::invalid_argument("turbo_decode: parity llr segment length mismatch");
    return full;
}

} // namespace

TurboDecodeResult turbo_decode_full(const CodeSpec& spec, std::span<const double> llrs,
                                    const DecoderConfig& config) {
    spec.validate();
    if (static_cast<long>(llrs.size()) != spec.codeword_bits())
        throw std::invalid_argument("turbo_decode: llr length != codeword length");
    const int steps = spec.steps();
    const int k = spec.k();
    const int inputs = spec.constituent.num_inputs();
    const long raw = static_cast<long>(steps) * spec.constituent.n();

    size_t offset = 0;
    std::span<const double> sys_llrs;
    if (spec.systematic) {
        sys_llrs = llrs.subspan(0, static_cast<size_t>(spec.info_bits));
        offset += static_cast<size_t>(spec.info_bits);
    }
    const size_t kept1 = static_cast<size_t>(spec.parity_bits(spec.puncture1));
    const size_t kept2 = static_cast<size_t>(spec.parity_bits(spec.puncture2));
    const std::vector<double> par1 = expand_parity(llrs.subspan(offset, kept1), spec.puncture1, raw);
    const std::vector<double> par2 =
        expand_parity(llrs.subspan(offset + kept1, kept2), spec.puncture2, raw);

    // Systematic llrs for the second decoder follow the interleaved symbol
    // order; symbols keep their internal bit order.
    std::vector<double> sys2;
    if (spec.systematic) {
        sys2.resize(static_cast<size_t>(spec.info_bits));
        for (int t = 0; t < steps; ++t) {
            const int src = spec.interleaver.pi[static_cast<size_t>(t)];
            for (int j = 0; j < k; ++j)
                sys2[static_cast<size_t>(t) * k + j] = sys_llrs[static_cast<size_t>(src) * k + j];
        }
    }

    // Per-symbol systematic contribution, reused for the final combination.
    std::vector<double> sys_term(static_cast<size_t>(steps) * inputs, 0.0);
    if (spec.systematic) {
        for (int t = 0; t < steps; ++t)
            for (int u = 0; u < inputs; ++u) {
                double v = 0.0;
                for (int j = 0; j < k; ++j) {
                    const double l = sys_llrs[static_cast<size_t>(t) * k + j];
                    v += ((u >> (k - 1 - j)) & 1) ? -0.5 * l : 0.5 * l;
                }
                sys_term[static_cast<size_t>(t) * inputs + u] = v;
            }
    }

    std::vector<double> ext1(static_cast<size_t>(steps) * inputs, 0.0);
    std::vector<double> ext2(static_cast<size_t>(steps) * inputs, 0.0); // natural order
    std::vector<double> prior2(static_cast<size_t>(steps) * inputs);
    std::vector<int> decisions(static_cast<size_t>(steps), -1);
    TurboDecodeResult result;
    result.symbol_posterior.assign(static_cast<size_t>(steps) * inputs, 0.0);

    int iterations = 0;
    for (int it = 0; it < config.max_iterations; ++it) {
        ++iterations;
        const BcjrResult dec1 = bcjr(spec.constituent, ext2, sys_llrs, par1, config);
        ext1 = dec1.extrinsic;

        for (int t = 0; t < steps; ++t) {
            const int src = spec.interleaver.pi[static_cast<size_t>(t)];
            for (int u = 0; u < inputs; ++u)
                prior2[static_cast<size_t>(t) * inputs + u] =
                    ext1[static_cast<size_t>(src) * inputs + u];
        }
        const BcjrResult dec2 = bcjr(spec.constituent, prior2, sys2, par2, config);
        for (int t = 0; t < steps; ++t) {
            const int dst = spec.interleaver.pi[static_cast<size_t>(t)];
            for (int u = 0; u < inputs; ++u)
                ext2[static_cast<size_t>(dst) * inputs + u] =
                    dec2.extrinsic[static_cast<size_t>(t) * inputs + u];
        }

        bool changed = false;
        for (int t = 0; t < steps; ++t) {
            int best_u = 0;
            double best_v = kNegInf;
            for (int u = 0; u < inputs; ++u) {
                const size_t idx = static_cast<size_t>(t) * inputs + u;
                const double v = sys_term[idx] + ext1[idx] + ext2[idx];
                result.symbol_posterior[idx] = v;
                if (v > best_v) {
                    best_v = v;
                    best_u = u;
                }
            }
            if (decisions[static_cast<size_t>(t)] != best_u) changed = true;
            decisions[static_cast<size_t>(t)] = best_u;
        }
        if (config.early_stop && !changed) break;
    }
    result.iterations = iterations;

    // Normalize the combined per-symbol weights into log-probabilities.
    for (int t = 0; t < steps; ++t) {
        double* row = result.symbol_posterior.data() + static_cast<size_t>(t) * inputs;
        double norm = kNegInf;
        for (int u = 0; u < inputs; ++u) norm = jacobian(norm, row[u], true);
        for (int u = 0; u < inputs; ++u) row[u] -= norm;
    }
    result.message = symbols_to_bits(decisions, k);
    return result;
}

std::vector<uint8_t> turbo_decode(const CodeSpec& spec, std::span<const double> llrs,
                                  const DecoderConfig& config) {
    return turbo_decode_full(spec, llrs, config).message;
}

} // namespace nlturbo
