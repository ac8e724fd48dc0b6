#include "corosim/numlab/batch_stats.hpp"

#include "corosim/errors.hpp"

namespace corosim {

namespace {

BatchStats stats_of(std::span<const Rational> xs) {
    Rational sum = 0;
    for (const Rational& x : xs) sum += x;
    Rational mean = sum / Rational(static_cast<long>(xs.size()));
    Rational acc = 0;
    for (const Rational& x : xs) {
        Rational d = x - mean;
        acc += d * d;
    }
    return {mean, acc / Rational(static_cast<long>(xs.size()))};
}

}  // namespace

BatchDivergenceReport batch_stats_divergence(std::span<const Rational> batch,
                                             std::span<const std::int64_t> split_sizes) {
    if (batch.empty()) throw SimError(Errc::InvalidSplit, "empty batch");
    std::int64_t total = 0;
    for (std::int64_t s : split_sizes) {
        if (s <= 0) throw SimError(Errc::InvalidSplit, "split size must be positive");
        total += s;
    }
    if (total != static_cast<std::int64_t>(batch.size())) {
        throw SimError(Errc::InvalidSplit, "split sizes do not partition the batch");
    }

    BatchDivergenceReport report;
    report.full = stats_of(batch);
    report.max_mean_deviation = 0;
    report.max_variance_deviation = 0;
    std::int64_t offset = 0;
    for (std::int64_t s : split_sizes) {
        BatchStats st = stats_of(batch.subspan(offset, s));
        Rational mdev = abs(Rational(st.mean - report.full.mean));
        Rational vdev = abs(Rational(st.variance - report.full.variance));
        if (mdev > report.max_mean_deviation) report.max_mean_deviation = mdev;
        if (vdev > report.max_variance_deviation) report.max_variance_deviation = vdev;
        report.splits.push_back(std::move(st));
        offset += s;
    }
    report.max_deviation = report.max_mean_deviation > report.max_variance_deviation
                               ? report.max_mean_deviation
                               : report.max_variance_deviation;
    return report;
}

}  // namespace corosim
