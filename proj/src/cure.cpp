#include "mssc/cure.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>

namespace mssc {

namespace {

inline double sq_dist(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

/// Centroid-linkage agglomeration of the given rows down to `target`
/// clusters; returns member-row groups.
std::vector<std::vector<std::size_t>> agglomerate_centroid_linkage(const Dataset& points,
                                                                   std::size_t target,
                                                                   DistanceCounter& counter) {
    struct Node {
        std::vector<std::size_t> members;
        std::vector<double> centroid;
    };
    std::vector<Node> nodes(points.m);
    for (std::size_t i = 0; i < points.m; ++i) {
        nodes[i].members = {i};
        const double* x = points.values.data() + i * points.n;
        nodes[i].centroid.assign(x, x + points.n);
    }
    while (nodes.size() > target) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                const double d = sq_dist(nodes[i].centroid.data(), nodes[j].centroid.data(),
                                         points.n);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        counter.add(nodes.size() * (nodes.size() - 1) / 2);
        Node& a = nodes[bi];
        Node& b = nodes[bj];
        const double wa = static_cast<double>(a.members.size());
        const double wb = static_cast<double>(b.members.size());
        for (std::size_t d = 0; d < points.n; ++d) {
            a.centroid[d] = (a.centroid[d] * wa + b.centroid[d] * wb) / (wa + wb);
        }
        a.members.insert(a.members.end(), b.members.begin(), b.members.end());
        nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    std::vector<std::vector<std::size_t>> out;
    out.reserve(nodes.size());
    for (Node& nd : nodes) out.push_back(std::move(nd.members));
    return out;
}

double rep_set_distance(const RepCluster& a, const RepCluster& b, std::size_t n,
                        DistanceCounter& counter) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.rep_count; ++i) {
        for (std::size_t j = 0; j < b.rep_count; ++j) {
            best = std::min(best, sq_dist(a.representatives.data() + i * n,
                                          b.representatives.data() + j * n, n));
        }
    }
    counter.add(a.rep_count * b.rep_count);
    return best;
}

}  // namespace

RepCluster make_rep_cluster(const Dataset& points, const std::vector<std::size_t>& member_rows,
                            std::size_t c, double alpha, DistanceCounter& counter) {
    if (member_rows.empty()) throw std::invalid_argument("make_rep_cluster: empty cluster");
    const std::size_t n = points.n;

    RepCluster out;
    out.members = member_rows.size();
    out.centroid.assign(n, 0.0);
    for (std::size_t r : member_rows) {
        const double* x = points.values.data() + r * n;
        for (std::size_t d = 0; d < n; ++d) out.centroid[d] += x[d];
    }
    for (double& v : out.centroid) v /= static_cast<double>(out.members);

    // farthest-first scatter: first pick maximizes distance to the centroid,
    // later picks maximize the minimum distance to those already picked
    const std::size_t want = std::min(c, member_rows.size());
    std::vector<std::size_t> picked;
    std::vector<double> min_dist(member_rows.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < member_rows.size(); ++i) {
        min_dist[i] = sq_dist(points.values.data() + member_rows[i] * n, out.centroid.data(), n);
    }
    counter.add(member_rows.size());
    while (picked.size() < want) {
        std::size_t far = 0;
        for (std::size_t i = 1; i < member_rows.size(); ++i) {
            if (min_dist[i] > min_dist[far]) far = i;
        }
        picked.push_back(far);
        min_dist[far] = -1.0;
        for (std::size_t i = 0; i < member_rows.size(); ++i) {
            if (min_dist[i] < 0.0) continue;
            min_dist[i] = std::min(min_dist[i],
                                   sq_dist(points.values.data() + member_rows[i] * n,
                                           points.values.data() + member_rows[far] * n, n));
        }
        counter.add(member_rows.size());
    }

    out.rep_count = want;
    out.representatives.resize(want * n);
    for (std::size_t r = 0; r < want; ++r) {
        const double* x = points.values.data() + member_rows[picked[r]] * n;
        double* rep = out.representatives.data() + r * n;
        for (std::size_t d = 0; d < n; ++d) rep[d] = x[d] + alpha * (out.centroid[d] - x[d]);
    }
    return out;
}

ClusteringResult run_cure(const Dataset& X, const CureParams& params, std::mt19937_64& rng,
                          DistanceCounter& counter) {
    const std::size_t k = params.k;
    const std::size_t n = X.n;
    if (k < 1) throw std::invalid_argument("run_cure: k >= 1 violated");
    if (params.s < k || params.s > X.m)
        throw std::invalid_argument("run_cure: k <= s <= m violated");
    if (params.f < 1 || params.q < 1)
        throw std::invalid_argument("run_cure: f >= 1 and q >= 1 violated");
    if (params.c < 1) throw std::invalid_argument("run_cure: c >= 1 violated");
    if (params.alpha < 0.0 || params.alpha > 1.0)
        throw std::invalid_argument("run_cure: 0 <= alpha <= 1 violated");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t nd0 = counter.count();

    // uniform sample of s rows
    std::vector<std::size_t> pool(X.m);
    for (std::size_t i = 0; i < X.m; ++i) pool[i] = i;
    for (std::size_t i = 0; i < params.s; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, X.m - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    Dataset S;
    S.m = params.s;
    S.n = n;
    S.values.resize(params.s * n);
    for (std::size_t i = 0; i < params.s; ++i) {
        const double* src = X.values.data() + pool[i] * n;
        std::copy(src, src + n, S.values.begin() + static_cast<std::ptrdiff_t>(i * n));
    }

    const std::size_t p = std::max<std::size_t>(1, params.s / (params.f * k * params.q));
    const std::size_t part_size = (params.s + p - 1) / p;
    if (part_size < 1) throw std::invalid_argument("run_cure: ceil(s/p) >= 1 violated");

    std::vector<RepCluster> pool_clusters;
    for (std::size_t part = 0; part < p; ++part) {
        const std::size_t lo = part * part_size;
        const std::size_t hi = std::min(lo + part_size, params.s);
        if (lo >= hi) break;
        Dataset part_data;
        part_data.m = hi - lo;
        part_data.n = n;
        part_data.values.assign(S.values.begin() + static_cast<std::ptrdiff_t>(lo * n),
                                S.values.begin() + static_cast<std::ptrdiff_t>(hi * n));
        const std::size_t target = std::min(params.q * k, part_data.m);
        for (const std::vector<std::size_t>& members :
             agglomerate_centroid_linkage(part_data, target, counter)) {
            pool_clusters.push_back(
                make_rep_cluster(part_data, members, params.c, params.alpha, counter));
        }
    }

    // pooled agglomeration to k under the minimum representative-set distance
    while (pool_clusters.size() > k) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i + 1 < pool_clusters.size(); ++i) {
            for (std::size_t j = i + 1; j < pool_clusters.size(); ++j) {
                const double d = rep_set_distance(pool_clusters[i], pool_clusters[j], n, counter);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        RepCluster& a = pool_clusters[bi];
        RepCluster& b = pool_clusters[bj];
        const double wa = static_cast<double>(a.members);
        const double wb = static_cast<double>(b.members);
        for (std::size_t d = 0; d < n; ++d) {
            a.centroid[d] = (a.centroid[d] * wa + b.centroid[d] * wb) / (wa + wb);
        }
        a.representatives.insert(a.representatives.end(), b.representatives.begin(),
                                 b.representatives.end());
        a.rep_count += b.rep_count;
        a.members += b.members;
        pool_clusters.erase(pool_clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    }

    // nearest representative decides each point's cluster
    const std::size_t k_eff = pool_clusters.size();
    std::vector<std::uint32_t> labels(X.m, 0);
    std::size_t total_reps = 0;
    for (const RepCluster& rc : pool_clusters) total_reps += rc.rep_count;
    for (std::size_t i = 0; i < X.m; ++i) {
        const double* x = X.values.data() + i * n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t cix = 0; cix < k_eff; ++cix) {
            const RepCluster& rc = pool_clusters[cix];
            for (std::size_t r = 0; r < rc.rep_count; ++r) {
                const double d = sq_dist(x, rc.representatives.data() + r * n, n);
                if (d < best) {
                    best = d;
                    labels[i] = static_cast<std::uint32_t>(cix);
                }
            }
        }
    }
    counter.add(X.m * total_reps);

    // report plain MSSC quantities: means of the assigned groups, then one
    // exact pass against them
    Centroids means(k_eff, n);
    std::vector<std::size_t> counts(k_eff, 0);
    for (std::size_t i = 0; i < X.m; ++i) {
        const double* x = X.values.data() + i * n;
        double* c = means.values.data() + labels[i] * n;
        for (std::size_t d = 0; d < n; ++d) c[d] += x[d];
        ++counts[labels[i]];
    }
    bool degenerate = k_eff < k;
    for (std::size_t j = 0; j < k_eff; ++j) {
        double* c = means.values.data() + j * n;
        if (counts[j] == 0) {
            const std::vector<double>& fallback = pool_clusters[j].centroid;
            std::copy(fallback.begin(), fallback.end(), c);
            degenerate = true;
            continue;
        }
        for (std::size_t d = 0; d < n; ++d) c[d] /= static_cast<double>(counts[j]);
    }

    AssignOutcome final_pass = assign_points(X, means, counter);
    ClusteringResult out;
    out.centroids = std::move(means);
    out.assignment = std::move(final_pass.assignment);
    out.objective = final_pass.objective;
    out.n_d = counter.count() - nd0;
    out.n_s = params.s;
    out.degenerate = degenerate;
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace mssc
