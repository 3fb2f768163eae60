#include <algorithm>
#include <numeric>
#include <vector>

#include "fqgate/classifiers.hpp"
#include "fqgate/errors.hpp"
#include "fqgate/rng.hpp"
#include "scoring_internal.hpp"

namespace fqgate {

double gini_impurity(long long n_high, long long n_low) {
    const long long total = n_high + n_low;
    if (total < 1) throw EmptyNodeError("gini impurity of an empty node");
    const double p_high = static_cast<double>(n_high) / static_cast<double>(total);
    const double p_low = static_cast<double>(n_low) / static_cast<double>(total);
    return 1.0 - p_high * p_high - p_low * p_low;
}

namespace {

constexpr double kMinGain = 1e-12;

struct BestSplit {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

struct TreeBuilder {
    const std::vector<FeatureVector>& x;
    const std::vector<int>& y;
    const ForestConfig& cfg;
    Rng& rng;
    Tree tree;

    int build(const std::vector<std::size_t>& idx) {
        long long high = 0;
        for (std::size_t i : idx) high += y[i];
        const long long low = static_cast<long long>(idx.size()) - high;

        const bool pure = high == 0 || low == 0;
        if (pure || static_cast<long long>(idx.size()) < cfg.min_samples_split)
            return emit_leaf(high, low);

        const BestSplit split = find_split(idx, high, low);
        if (split.feature < 0) return emit_leaf(high, low);

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : idx) {
            if (x[i].values[split.feature] <= split.threshold) left_idx.push_back(i);
            else right_idx.push_back(i);
        }

        const int node = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({split.feature, split.threshold, -1, -1, -1});
        const int left = build(left_idx);
        const int right = build(right_idx);
        tree.nodes[node].left = left;
        tree.nodes[node].right = right;
        return node;
    }

    int emit_leaf(long long high, long long low) {
        const int node = static_cast<int>(tree.nodes.size());
        // Majority class; ties gate conservatively to Low.
        tree.nodes.push_back({-1, 0.0, -1, -1, high > low ? 1 : 0});
        return node;
    }

    BestSplit find_split(const std::vector<std::size_t>& idx, long long high, long long low) {
        const auto m = static_cast<std::size_t>(cfg.features_per_split);
        std::array<int, FeatureVector::kDim> pool;
        std::iota(pool.begin(), pool.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = i + rng.index(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        std::sort(pool.begin(), pool.begin() + m);  // lowest feature index wins gain ties

        const double parent = gini_impurity(high, low);
        const auto n = static_cast<double>(idx.size());
        BestSplit best;
        std::vector<std::pair<double, int>> vals(idx.size());
        for (std::size_t fi = 0; fi < m; ++fi) {
            const int f = pool[fi];
            for (std::size_t i = 0; i < idx.size(); ++i)
                vals[i] = {x[idx[i]].values[f], y[idx[i]]};
            std::sort(vals.begin(), vals.end());

            long long left_high = 0;
            for (std::size_t i = 1; i < vals.size(); ++i) {
                left_high += vals[i - 1].second;
                if (vals[i].first == vals[i - 1].first) continue;
                double thr = 0.5 * (vals[i - 1].first + vals[i].first);
                if (!(thr < vals[i].first)) thr = vals[i - 1].first;  // midpoint rounded up

                const auto left_n = static_cast<long long>(i);
                const auto right_n = static_cast<long long>(vals.size() - i);
                const long long right_high = high - left_high;
                const double weighted =
                    (static_cast<double>(left_n) * gini_impurity(left_high, left_n - left_high) +
                     static_cast<double>(right_n) * gini_impurity(right_high, right_n - right_high)) /
                    n;
                const double gain = parent - weighted;
                if (gain > best.gain + kMinGain) best = {f, thr, gain};
            }
        }
        return best;
    }
};

}  // namespace

int tree_predict(const Tree& tree, const FeatureVector& fv) {
    int node = 0;
    while (tree.nodes[node].split_feature >= 0) {
        const TreeNode& tn = tree.nodes[node];
        node = fv.values[tn.split_feature] <= tn.split_threshold ? tn.left : tn.right;
    }
    return tree.nodes[node].leaf_class;
}

ForestParams train_forest(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                          const ForestConfig& cfg, std::uint64_t seed) {
    const std::size_t n = x.size();
    ForestParams forest;
    forest.trees.reserve(cfg.tree_count);
    for (long long t = 0; t < cfg.tree_count; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> bootstrap(n);
        for (std::size_t i = 0; i < n; ++i) bootstrap[i] = rng.index(n);
        TreeBuilder builder{x, y, cfg, rng, {}};
        builder.build(bootstrap);
        forest.trees.push_back(std::move(builder.tree));
    }
    return forest;
}

namespace detail {

double forest_score(const ForestParams& p, const FeatureVector& fv) {
    long long high_votes = 0;
    for (const Tree& tree : p.trees) high_votes += tree_predict(tree, fv);
    return static_cast<double>(high_votes) / static_cast<double>(p.trees.size());
}

}  // namespace detail

}  // namespace fqgate
