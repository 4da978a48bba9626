#include "nlturbo/sim.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace nlturbo {

WilsonInterval wilson_interval(long successes, long trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    const double nd = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nd;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nd;
    const double center = (p + z2 / (2.0 * nd)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void BerTally::add(const BerTally& other) {
    bit_errors += other.bit_errors;
    info_bits += other.info_bits;
    frame_errors += other.frame_errors;
    frames += other.frames;
}

int worker_threads() {
    if (const char* env = std::getenv("NLTURBO_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

std::vector<uint8_t> random_message(int bits, Prng& rng) {
    std::vector<uint8_t> message(static_cast<size_t>(bits));
    for (auto& bit : message) bit = static_cast<uint8_t>(rng.next_u64() & 1u);
    return message;
}

BerTally count_errors(std::span<const uint8_t> sent, std::span<const uint8_t> decoded) {
    BerTally tally;
    tally.frames = 1;
    tally.info_bits = static_cast<long>(sent.size());
    for (size_t i = 0; i < sent.size(); ++i)
        if (sent[i] != decoded[i]) ++tally.bit_errors;
    if (tally.bit_errors) tally.frame_errors = 1;
    return tally;
}

// Runs `body(block_index)` for blocks [0, max_blocks) in deterministic waves
// of pool-width size; between waves, `stop()` decides whether to cut the run
// short. Tallies are folded in block order.
template <typename Body, typename Fold, typename Stop>
int run_waves(int max_blocks, int threads, Body&& body, Fold&& fold, Stop&& stop) {
    int done = 0;
    while (done < max_blocks) {
        const int wave = std::min(threads, max_blocks - done);
        using Result = decltype(body(0));
        std::vector<Result> results(static_cast<size_t>(wave));
        if (wave == 1) {
            results[0] = body(done);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<size_t>(wave));
            for (int w = 0; w < wave; ++w)
                pool.emplace_back([&, w] { results[static_cast<size_t>(w)] = body(done + w); });
            for (auto& t : pool) t.join();
        }
        for (int w = 0; w < wave; ++w) fold(results[static_cast<size_t>(w)]);
        done += wave;
        if (stop()) break;
    }
    return done;
}

} // namespace

ZSimPoint run_z_point(const CodeSpec& spec, double crossover, const MonteCarloConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const ChannelModel channel = ChannelModel::z_channel(crossover);
    const int threads = config.threads > 0 ? config.threads : worker_threads();

    ZSimPoint point;
    point.crossover = crossover;
    point.rate = spec.rate();
    point.capacity = z_capacity(crossover);
    point.gap = point.capacity - point.rate.value();

    const auto block = [&](int index) -> BerTally {
        Prng rng(mix_keys({config.seed, static_cast<uint64_t>(index), 0x25ccull}));
        const std::vector<uint8_t> message = random_message(spec.info_bits, rng);
        const std::vector<uint8_t> codeword = encode(spec, message);
        const std::vector<uint8_t> received = transmit(channel, codeword, rng);
        const std::vector<double> llrs =
            channel_llr(channel, received, config.decoder.llr_cap);
        const std::vector<uint8_t> decoded = turbo_decode(spec, llrs, config.decoder);
        return count_errors(message, decoded);
    };
    run_waves(
        config.max_blocks, threads, block, [&](const BerTally& t) { point.tally.add(t); },
        [&] {
            return config.target_bit_errors > 0 &&
                   point.tally.bit_errors >= config.target_bit_errors;
        });
    point.stop_reason =
        (config.target_bit_errors > 0 && point.tally.bit_errors >= config.target_bit_errors)
            ? "error_target"
            : "block_budget";
    point.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return point;
}

BbscSimResult run_bbsc_sim(const SuperpositionSpec& spec, const BbscSimConfig& config) {
    spec.validate();
    const auto start = std::chrono::steady_clock::now();
    const ChannelModel channel = ChannelModel::bbsc(spec.alpha, spec.beta);
    const int threads = config.threads > 0 ? config.threads : worker_threads();

    BbscSimResult result;
    result.alpha = spec.alpha;
    result.beta = spec.beta;
    result.p1 = spec.p1;
    result.rate1 = spec.spec1.rate();
    result.rate2 = spec.spec2.rate();
    result.boundary = bbsc_region(spec.alpha, spec.beta, spec.p1);
    result.genie_enabled = config.genie;

    struct BlockResult {
        BerTally user1, user2, genie;
        long stage1_failed = 0;
    };
    const auto block = [&](int index) -> BlockResult {
        Prng rng(mix_keys({config.seed, static_cast<uint64_t>(index), 0xbb5cull}));
        const std::vector<uint8_t> msg1 = random_message(spec.spec1.info_bits, rng);
        const std::vector<uint8_t> msg2 = random_message(spec.spec2.info_bits, rng);
        const std::vector<uint8_t> x1 = encode(spec.spec1, msg1);
        const std::vector<uint8_t> x2 = encode(spec.spec2, msg2);
        const std::vector<uint8_t> x = superpose(x1, x2);
        auto [y1, y2] = transmit_bbsc(channel, x, rng);

        BlockResult block_result;
        const User2Decode u2 =
            decode_user2(spec.spec2, y2, spec.beta, spec.p1, config.decoder);
        block_result.user2 = count_errors(msg2, u2.message);

        const User1Decode u1 = decode_user1(spec.spec1, spec.spec2, y1, spec.alpha, spec.beta,
                                            spec.p1, config.decoder);
        block_result.user1 = count_errors(msg1, u1.message);
        if (u1.stage1_message2 != msg2) block_result.stage1_failed = 1;

        if (config.genie) {
            const std::vector<uint8_t> genie =
                decode_user1_genie(spec.spec1, y1, x2, spec.alpha, config.decoder);
            block_result.genie = count_errors(msg1, genie);
        }
        return block_result;
    };
    run_waves(
        config.blocks, threads, block,
        [&](const BlockResult& b) {
            result.user1.add(b.user1);
            result.user2.add(b.user2);
            result.user1_genie.add(b.genie);
            result.stage1_block_failures += b.stage1_failed;
        },
        [] { return false; });
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace nlturbo
