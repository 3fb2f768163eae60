#include "fqgate/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fqgate/errors.hpp"
#include "fqgate/rng.hpp"

namespace fqgate {

namespace {

// Stratum order is fixed so allocation ties break the same way on every run:
// High, Low, unlabeled.
int stratum_of(const FaceSample& s) {
    if (!s.label) return 2;
    return *s.label == QualityLabel::High ? 0 : 1;
}

}  // namespace

std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw InvalidConfigError("train_fraction must lie strictly between 0 and 1");
    if (ds.empty()) throw TooFewSamplesError("cannot split an empty dataset");

    const std::size_t n = ds.size();
    std::vector<std::vector<std::size_t>> strata(3);
    if (spec.stratified) {
        for (std::size_t i = 0; i < n; ++i) strata[stratum_of(ds.samples[i])].push_back(i);
    } else {
        strata[0].resize(n);
        std::iota(strata[0].begin(), strata[0].end(), std::size_t{0});
    }

    if (spec.stratified) {
        for (const auto& members : strata) {
            if (!members.empty() && members.size() < 2)
                throw TooFewSamplesError("stratified split requires at least 2 samples per present class");
        }
    }

    const auto total_train = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(n)));

    // Largest-remainder allocation of the train budget across strata.
    std::vector<std::size_t> take(strata.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;  // (-frac, stratum) for stable ordering
    std::size_t allocated = 0;
    for (std::size_t c = 0; c < strata.size(); ++c) {
        if (strata[c].empty()) continue;
        const double exact = spec.train_fraction * static_cast<double>(strata[c].size());
        take[c] = static_cast<std::size_t>(std::floor(exact));
        allocated += take[c];
        remainders.emplace_back(-(exact - std::floor(exact)), c);
    }
    std::sort(remainders.begin(), remainders.end());
    for (const auto& [neg_frac, c] : remainders) {
        if (allocated >= total_train) break;
        if (neg_frac < 0.0 && take[c] < strata[c].size()) {
            ++take[c];
            ++allocated;
        }
    }
    // Rounding can still leave a unit short (e.g. all remainders zero); top up
    // from the first stratum with room.
    for (std::size_t c = 0; c < strata.size() && allocated < total_train; ++c) {
        while (take[c] < strata[c].size() && allocated < total_train) {
            ++take[c];
            ++allocated;
        }
    }

    Rng rng(spec.seed);
    std::vector<char> in_train(n, 0);
    for (std::size_t c = 0; c < strata.size(); ++c) {
        auto members = strata[c];
        for (std::size_t i = members.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.index(i));
            std::swap(members[i - 1], members[j]);
        }
        for (std::size_t i = 0; i < take[c]; ++i) in_train[members[i]] = 1;
    }

    Dataset train{ds.name + "/train", {}};
    Dataset test{ds.name + "/test", {}};
    train.samples.reserve(total_train);
    test.samples.reserve(n - total_train);
    for (std::size_t i = 0; i < n; ++i) {
        (in_train[i] ? train : test).samples.push_back(ds.samples[i]);
    }
    return {std::move(train), std::move(test)};
}

}  // namespace fqgate
