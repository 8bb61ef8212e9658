#include "matfree/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <cstdio>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace matfree {

const char* verdict_name(SearchVerdict v) {
    switch (v) {
        case SearchVerdict::certified: return "certified";
        case SearchVerdict::exhausted_none: return "exhausted_none";
        case SearchVerdict::budget_exceeded: return "budget_exceeded";
    }
    return "?";
}

std::vector<int> defect_candidates(const Arrangement& a, const std::vector<int>& placed,
                                   long long required) {
    std::vector<int> zero_based;
    zero_based.reserve(placed.size());
    for (int i : placed) zero_based.push_back(i - 1);
    Arrangement sub = a.select(zero_based);
    std::vector<char> in(a.size() + 1, 0);
    for (int i : placed) in[static_cast<std::size_t>(i)] = 1;
    std::vector<int> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (in[i + 1]) continue;
        if (defect(sub, a[i]) == required) out.push_back(static_cast<int>(i) + 1);
    }
    return out;
}

namespace {

constexpr unsigned kCapacity = 128;

struct Bits {
    std::uint64_t w0 = 0, w1 = 0;
    bool test(unsigned i) const {
        return ((i < 64 ? w0 >> i : w1 >> (i - 64)) & 1u) != 0;
    }
    void set(unsigned i) { (i < 64 ? w0 : w1) |= 1ULL << (i & 63); }
    void reset(unsigned i) { (i < 64 ? w0 : w1) &= ~(1ULL << (i & 63)); }
    unsigned count() const {
        return static_cast<unsigned>(__builtin_popcountll(w0) + __builtin_popcountll(w1));
    }
    bool operator==(const Bits&) const = default;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const {
        auto mix = [](std::uint64_t x) {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        };
        return static_cast<std::size_t>(mix(b.w0) ^ (mix(b.w1) << 1));
    }
};

// Integer tables that turn the search's inner loops into pure index work:
// every unordered pair of hyperplanes maps to the id of its (canonical)
// intersection subspace, so a defect is a distinct-count over ids.
struct Geometry {
    const Arrangement* a = nullptr;
    unsigned n = 0;
    unsigned dim = 0;
    unsigned rank_a = 0;
    std::vector<std::vector<int>> pair_id;  // n x n, -1 on the diagonal
    int pool_size = 0;
    std::vector<long long> full_drop;       // |A| - |A^H| per hyperplane

    explicit Geometry(const Arrangement& arr) : a(&arr), n(static_cast<unsigned>(arr.size())) {
        dim = arr.dim();
        rank_a = rank(arr);
        pair_id.assign(n, std::vector<int>(n, -1));
        std::unordered_map<Subspace, int, SubspaceHash> pool;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = i + 1; j < n; ++j) {
                Subspace s = intersection_of({arr[i], arr[j]}, dim, arr.conductor());
                auto [it, fresh] = pool.emplace(std::move(s), pool_size);
                if (fresh) ++pool_size;
                pair_id[i][j] = pair_id[j][i] = it->second;
            }
        full_drop.resize(n);
        for (unsigned h = 0; h < n; ++h) {
            std::vector<char> seen(static_cast<std::size_t>(pool_size), 0);
            long long distinct = 0;
            for (unsigned k = 0; k < n; ++k) {
                if (k == h) continue;
                int id = pair_id[h][k];
                if (!seen[static_cast<std::size_t>(id)]) {
                    seen[static_cast<std::size_t>(id)] = 1;
                    ++distinct;
                }
            }
            full_drop[h] = static_cast<long long>(n) - distinct;
        }
    }
};

struct FoundCertificate {
    std::vector<std::vector<int>> blocks;  // 1-based, MAT mode
    std::vector<Mat2Step> steps;           // MAT2 mode
};

// State shared between workers. Work items are the first-level choices; a
// worker deep in item i abandons as soon as some item < i has produced a
// certificate, so the surviving result is the one sequential order would find.
struct Shared {
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::uint64_t> memo_hits{0};
    std::atomic<bool> over_budget{false};
    std::atomic<int> best_item{INT_MAX};
    std::atomic<std::uint64_t> next_progress{0};
    std::mutex mu;
    std::map<int, FoundCertificate> found;  // by item index, guarded by mu
    std::vector<std::uint64_t> depth_hist;  // guarded by mu

    std::uint64_t budget = 0;
    std::uint64_t progress_every = 0;
    std::chrono::steady_clock::time_point started;
};

class Engine {
public:
    Engine(const Geometry& g, const SearchConfig& cfg, SearchMode mode, Shared& sh)
        : g_(g), cfg_(cfg), mode_(mode), sh_(sh),
          exps_(g.dim, 0),
          stamp_(static_cast<std::size_t>(g.pool_size), -1),
          depth_hist_(g.n + 2, 0) {}

    // Explores one first-level work item: first_set is the first block or
    // first step's members (0-based, ascending). Returns true when a
    // certificate was found inside this item.
    bool run_item(int item_index, const std::vector<int>& first_set) {
        item_ = item_index;
        placed_ = Bits{};
        std::fill(exps_.begin(), exps_.end(), 0);
        blocks_.clear();
        steps_.clear();
        if (g_.n == 0) return finish();  // the empty arrangement certifies itself
        unsigned q = static_cast<unsigned>(first_set.size());
        // A certificate's first block/step adds rank(A) hyperplanes: the final
        // nonzero exponent count is rank(A), later steps never revisit a slot
        // that stayed zero, and block sizes only shrink.
        if (q != g_.rank_a) return false;
        if (!independent(first_set)) return false;
        if (q == g_.n) {
            for (int h : first_set)
                if (g_.full_drop[static_cast<std::size_t>(h)] != 1) return false;
        }
        std::vector<int> saved = exps_;
        place(first_set, 0);
        bool hit = mode_ == SearchMode::mat ? dfs_mat(1) : dfs_mat2(1);
        unplace(first_set);
        exps_ = saved;
        return hit;
    }

    void merge_counts() {
        std::lock_guard<std::mutex> lk(sh_.mu);
        merge_counts_locked();
    }

private:
    void merge_counts_locked() {
        if (sh_.depth_hist.size() < depth_hist_.size()) sh_.depth_hist.resize(depth_hist_.size());
        for (std::size_t i = 0; i < depth_hist_.size(); ++i) {
            sh_.depth_hist[i] += depth_hist_[i];
            depth_hist_[i] = 0;
        }
    }

    bool aborted() const {
        return sh_.over_budget.load(std::memory_order_relaxed) ||
               sh_.best_item.load(std::memory_order_relaxed) < item_;
    }

    bool count_node(unsigned depth) {
        std::uint64_t seen = sh_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (depth < depth_hist_.size()) ++depth_hist_[depth];
        if (seen > sh_.budget) {
            sh_.over_budget.store(true, std::memory_order_relaxed);
            return false;
        }
        if (sh_.progress_every) progress(seen);
        return true;
    }

    void progress(std::uint64_t seen) {
        std::uint64_t at = sh_.next_progress.load(std::memory_order_relaxed);
        if (seen < at) return;
        if (!sh_.next_progress.compare_exchange_strong(at, seen + sh_.progress_every)) return;
        std::string hist;
        double secs;
        {
            std::lock_guard<std::mutex> lk(sh_.mu);
            merge_counts_locked();
            secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - sh_.started)
                       .count();
            for (std::size_t d = 0; d < sh_.depth_hist.size(); ++d) {
                if (!sh_.depth_hist[d]) continue;
                hist += (hist.empty() ? "" : " ") + std::to_string(d) + ":" +
                        std::to_string(sh_.depth_hist[d]);
            }
        }
        std::fprintf(stderr, "progress: nodes=%llu rate=%.0f/s depth{%s}\n",
                     static_cast<unsigned long long>(seen),
                     secs > 0 ? static_cast<double>(seen) / secs : 0.0, hist.c_str());
    }

    bool finish() {
        FoundCertificate fc;
        fc.blocks = blocks_;
        fc.steps = steps_;
        int prev = sh_.best_item.load();
        while (item_ < prev && !sh_.best_item.compare_exchange_weak(prev, item_)) {
        }
        std::lock_guard<std::mutex> lk(sh_.mu);
        sh_.found[item_] = std::move(fc);
        return true;
    }

    // Bumps the exponents and records the step. For MAT, top_value is the
    // current top exponent (the caller restores exps_ afterwards); for MAT2
    // the members sit in slots dim-q+1 .. dim in the given order.
    void place(const std::vector<int>& set, int top_value) {
        if (mode_ == SearchMode::mat) {
            for (int h : set) placed_.set(static_cast<unsigned>(h));
            unsigned q = static_cast<unsigned>(set.size());
            for (std::size_t i = exps_.size() - q; i < exps_.size(); ++i)
                exps_[i] = top_value + 1;
            blocks_.emplace_back();
            for (int h : set) blocks_.back().push_back(h + 1);
        } else {
            place_mat2(set, g_.dim - static_cast<unsigned>(set.size()) + 1);
        }
    }

    void place_mat2(const std::vector<int>& set, unsigned s) {
        for (int h : set) placed_.set(static_cast<unsigned>(h));
        for (unsigned j = s; j <= g_.dim; ++j) exps_[j - 1] += 1;
        Mat2Step st;
        st.s = static_cast<int>(s);
        unsigned slot = s;
        for (int h : set) st.slotted.emplace_back(h + 1, static_cast<int>(slot++));
        steps_.push_back(std::move(st));
    }

    // Clears the placement bits and the recorded step. Exponents are restored
    // by the caller (it saved them before place()).
    void unplace(const std::vector<int>& set) {
        for (int h : set) placed_.reset(static_cast<unsigned>(h));
        if (mode_ == SearchMode::mat)
            blocks_.pop_back();
        else
            steps_.pop_back();
    }

    // --- exact geometry ----------------------------------------------------

    long long defect_of(int h) const {
        ++token_;
        long long distinct = 0;
        long long placed_count = 0;
        const auto& row = g_.pair_id[static_cast<std::size_t>(h)];
        for (unsigned k = 0; k < g_.n; ++k) {
            if (!placed_.test(k)) continue;
            ++placed_count;
            int id = row[k];
            if (stamp_[static_cast<std::size_t>(id)] != token_) {
                stamp_[static_cast<std::size_t>(id)] = token_;
                ++distinct;
            }
        }
        return placed_count - distinct;
    }

    bool independent(const std::vector<int>& set) const {
        std::vector<Covector> rows;
        rows.reserve(set.size());
        for (int h : set) rows.push_back((*g_.a)[static_cast<std::size_t>(h)].covector());
        return rref_in_place(rows) == set.size();
    }

    // No placed hyperplane may contain the intersection of set. set is
    // already known independent, so the span of its covectors is exactly the
    // annihilator of the intersection.
    bool avoids_placed(const std::vector<int>& set) const {
        std::vector<Covector> rows;
        rows.reserve(set.size());
        for (int h : set) rows.push_back((*g_.a)[static_cast<std::size_t>(h)].covector());
        rref_in_place(rows);
        for (unsigned k = 0; k < g_.n; ++k) {
            if (!placed_.test(k)) continue;
            if (in_row_span(rows, (*g_.a)[k].covector())) return false;
        }
        return true;
    }

    // --- memoization -------------------------------------------------------

    bool memo_hit() {
        if (!cfg_.memoize) return false;
        auto it = memo_.find(placed_);
        if (it == memo_.end()) return false;
        sh_.memo_hits.fetch_add(1, std::memory_order_relaxed);
        std::vector<std::uint8_t> now(exps_.begin(), exps_.end());
        if (it->second != now)
            throw std::logic_error(
                "memo hit with diverging exponents; the placed-set key assumption is broken");
        return true;
    }

    void memo_store() {
        if (!cfg_.memoize || memo_.size() >= cfg_.memo_limit) return;
        memo_.emplace(placed_, std::vector<std::uint8_t>(exps_.begin(), exps_.end()));
    }

    // --- MAT -----------------------------------------------------------------

    bool dfs_mat(unsigned k) {
        if (placed_.count() == g_.n) return finish();
        if (aborted()) return false;
        if (!count_node(k)) return false;
        if (memo_hit()) return false;

        unsigned remaining = g_.n - placed_.count();
        // Branching set: defect against the placed prefix must equal k, the
        // number of completed blocks, which is also the current top exponent.
        std::vector<int> cands;
        for (unsigned h = 0; h < g_.n; ++h) {
            if (placed_.test(h)) continue;
            if (defect_of(static_cast<int>(h)) == static_cast<long long>(k))
                cands.push_back(static_cast<int>(h));
        }
        unsigned p = static_cast<unsigned>(
            std::count(exps_.begin(), exps_.end(), static_cast<int>(k)));
        // Blocks after the first never reach rank(A): their intersection would
        // be the whole center, which lies inside every placed hyperplane.
        unsigned qmax = std::min({p, g_.rank_a - 1, remaining,
                                  static_cast<unsigned>(cands.size())});
        std::vector<int> finishers;
        if (remaining <= qmax) {
            // A completing block member must drop the full arrangement's
            // restriction count by exactly k+1.
            for (int h : cands)
                if (g_.full_drop[static_cast<std::size_t>(h)] == static_cast<long long>(k) + 1)
                    finishers.push_back(h);
        }
        for (unsigned q = qmax; q >= 1; --q) {
            const std::vector<int>& source = (q == remaining) ? finishers : cands;
            if (source.size() < q) continue;
            std::vector<unsigned> c(q);
            for (unsigned i = 0; i < q; ++i) c[i] = i;
            while (true) {
                std::vector<int> set(q);
                for (unsigned i = 0; i < q; ++i) set[i] = source[c[i]];
                if (independent(set) && avoids_placed(set)) {
                    std::vector<int> saved = exps_;
                    place(set, static_cast<int>(k));
                    bool hit = dfs_mat(k + 1);
                    unplace(set);
                    exps_ = saved;
                    if (hit) return true;
                }
                if (aborted()) return false;
                int i = static_cast<int>(q) - 1;
                while (i >= 0 &&
                       c[static_cast<unsigned>(i)] ==
                           source.size() - q + static_cast<unsigned>(i))
                    --i;
                if (i < 0) break;
                ++c[static_cast<unsigned>(i)];
                for (unsigned j = static_cast<unsigned>(i) + 1; j < q; ++j)
                    c[j] = c[j - 1] + 1;
            }
        }
        if (aborted()) return false;  // never memoize a subtree cut short
        memo_store();
        return false;
    }

    // --- MAT2 ----------------------------------------------------------------

    struct Run {
        long long value = 0;
        unsigned width = 0;
    };

    bool dfs_mat2(unsigned depth) {
        if (placed_.count() == g_.n) return finish();
        if (aborted()) return false;
        if (!count_node(depth)) return false;
        if (memo_hit()) return false;

        unsigned remaining = g_.n - placed_.count();
        unsigned t = 0;  // first slot with a nonzero exponent (1-based), 0 when all are zero
        for (unsigned i = 0; i < g_.dim; ++i)
            if (exps_[i] != 0) {
                t = i + 1;
                break;
            }
        // Group the unplaced hyperplanes by defect once per node; a slot of
        // value v can only take a hyperplane of defect exactly v.
        std::map<long long, std::vector<int>> by_defect;
        for (unsigned h = 0; h < g_.n; ++h) {
            if (placed_.test(h)) continue;
            by_defect[defect_of(static_cast<int>(h))].push_back(static_cast<int>(h));
        }
        unsigned s_low = std::max(t + 1, g_.dim >= remaining ? g_.dim - remaining + 1 : 1u);
        for (unsigned s = s_low; s <= g_.dim; ++s) {
            unsigned q = g_.dim - s + 1;
            bool completing = q == remaining;
            // Slots s..dim carry ascending exponents; runs of equal value are
            // interchangeable, so members get ascending-index order inside
            // each run (canonical and lossless).
            std::vector<Run> runs;
            for (unsigned j = s; j <= g_.dim; ++j) {
                long long v = exps_[j - 1];
                if (!runs.empty() && runs.back().value == v)
                    ++runs.back().width;
                else
                    runs.push_back({v, 1});
            }
            std::vector<std::vector<int>> pools;
            bool feasible = true;
            for (const Run& run : runs) {
                auto it = by_defect.find(run.value);
                std::vector<int> pool = it == by_defect.end() ? std::vector<int>{} : it->second;
                if (completing) {
                    std::vector<int> filtered;
                    for (int h : pool)
                        if (g_.full_drop[static_cast<std::size_t>(h)] == run.value + 1)
                            filtered.push_back(h);
                    pool = std::move(filtered);
                }
                if (pool.size() < run.width) {
                    feasible = false;
                    break;
                }
                pools.push_back(std::move(pool));
            }
            if (!feasible) continue;
            std::vector<int> chosen;
            if (enumerate_runs(runs, pools, 0, chosen, s, depth)) return true;
            if (aborted()) return false;
        }
        if (aborted()) return false;
        memo_store();
        return false;
    }

    // Odometer over per-run combinations; chosen accumulates the step members
    // in ascending slot order.
    bool enumerate_runs(const std::vector<Run>& runs, const std::vector<std::vector<int>>& pools,
                        std::size_t which, std::vector<int>& chosen, unsigned s, unsigned depth) {
        if (which == runs.size()) {
            if (!independent(chosen) || !avoids_placed(chosen)) return false;
            std::vector<int> saved = exps_;
            place_mat2(chosen, s);
            bool hit = dfs_mat2(depth + 1);
            for (int h : chosen) placed_.reset(static_cast<unsigned>(h));
            steps_.pop_back();
            exps_ = saved;
            return hit;
        }
        unsigned width = runs[which].width;
        const std::vector<int>& pool = pools[which];
        std::vector<unsigned> c(width);
        for (unsigned i = 0; i < width; ++i) c[i] = i;
        while (true) {
            std::size_t base = chosen.size();
            for (unsigned i = 0; i < width; ++i) chosen.push_back(pool[c[i]]);
            bool hit = enumerate_runs(runs, pools, which + 1, chosen, s, depth);
            chosen.resize(base);
            if (hit) return true;
            if (aborted()) return false;
            int i = static_cast<int>(width) - 1;
            while (i >= 0 &&
                   c[static_cast<unsigned>(i)] == pool.size() - width + static_cast<unsigned>(i))
                --i;
            if (i < 0) break;
            ++c[static_cast<unsigned>(i)];
            for (unsigned j = static_cast<unsigned>(i) + 1; j < width; ++j) c[j] = c[j - 1] + 1;
        }
        return false;
    }

    const Geometry& g_;
    const SearchConfig& cfg_;
    SearchMode mode_;
    Shared& sh_;
    int item_ = 0;
    Bits placed_;
    std::vector<int> exps_;
    std::vector<std::vector<int>> blocks_;
    std::vector<Mat2Step> steps_;
    mutable std::vector<int> stamp_;
    mutable int token_ = 0;
    std::vector<std::uint64_t> depth_hist_;
    std::unordered_map<Bits, std::vector<std::uint8_t>, BitsHash> memo_;
};

// First-level work items: either the user-supplied first blocks, or all
// rank(A)-subsets grouped by smallest member (one item per smallest member;
// a worker enumerates its group lexicographically, so the parallel winner,
// the smallest item holding a certificate, is the sequential result).
struct FirstItems {
    bool restricted = false;
    std::vector<std::vector<int>> explicit_sets;  // 0-based, when restricted
    unsigned group_count = 0;                     // items 0..group_count-1 otherwise
};

FirstItems make_items(const Geometry& g, const SearchConfig& cfg) {
    FirstItems items;
    if (cfg.first_blocks) {
        items.restricted = true;
        for (const auto& set : *cfg.first_blocks) {
            std::vector<int> zero;
            std::unordered_set<int> dup;
            for (int i : set) {
                if (i < 1 || static_cast<unsigned>(i) > g.n)
                    throw std::invalid_argument("first-block index out of range: " +
                                                std::to_string(i));
                if (!dup.insert(i).second)
                    throw std::invalid_argument("first-block index repeated: " +
                                                std::to_string(i));
                zero.push_back(i - 1);
            }
            std::sort(zero.begin(), zero.end());
            items.explicit_sets.push_back(std::move(zero));
        }
        return items;
    }
    if (g.n == 0) {
        items.group_count = 1;  // one empty item, certifying the empty arrangement
        return items;
    }
    items.group_count = g.rank_a <= g.n ? g.n - g.rank_a + 1 : 0;
    return items;
}

bool run_first_item(Engine& eng, const Geometry& g, const FirstItems& items, int index) {
    if (items.restricted)
        return eng.run_item(index, items.explicit_sets[static_cast<std::size_t>(index)]);
    if (g.n == 0) return eng.run_item(index, {});
    unsigned q = g.rank_a;
    std::vector<int> set(q);
    set[0] = index;
    if (q == 1) return eng.run_item(index, set);
    // lexicographic (q-1)-combinations of {index+1 .. n-1}
    std::vector<unsigned> c(q - 1);
    for (unsigned i = 0; i + 1 < q; ++i) c[i] = static_cast<unsigned>(index) + 1 + i;
    while (true) {
        for (unsigned i = 0; i + 1 < q; ++i) set[i + 1] = static_cast<int>(c[i]);
        if (eng.run_item(index, set)) return true;
        int i = static_cast<int>(q) - 2;
        while (i >= 0 && c[static_cast<unsigned>(i)] == g.n - (q - 1) + static_cast<unsigned>(i))
            --i;
        if (i < 0) break;
        ++c[static_cast<unsigned>(i)];
        for (unsigned j = static_cast<unsigned>(i) + 1; j + 1 < q; ++j) c[j] = c[j - 1] + 1;
    }
    return false;
}

SearchOutcome run_search(const Arrangement& a, const SearchConfig& cfg, SearchMode mode) {
    if (a.size() > kCapacity)
        throw std::invalid_argument("search capacity is " + std::to_string(kCapacity) +
                                    " hyperplanes, arrangement has " + std::to_string(a.size()));
    if (cfg.node_budget == 0) throw std::invalid_argument("node budget must be positive");
    if (cfg.worker_count == 0) throw std::invalid_argument("worker count must be positive");

    Geometry g(a);
    Shared sh;
    sh.budget = cfg.node_budget;
    sh.progress_every = cfg.progress_every;
    sh.next_progress = cfg.progress_every;
    sh.started = std::chrono::steady_clock::now();

    FirstItems items = make_items(g, cfg);
    int item_count = items.restricted ? static_cast<int>(items.explicit_sets.size())
                                      : static_cast<int>(items.group_count);

    std::atomic<int> next_item{0};
    auto worker = [&] {
        Engine eng(g, cfg, mode, sh);
        while (true) {
            int i = next_item.fetch_add(1);
            if (i >= item_count) break;
            if (sh.over_budget.load(std::memory_order_relaxed)) break;
            if (sh.best_item.load(std::memory_order_relaxed) < i) continue;
            run_first_item(eng, g, items, i);
        }
        eng.merge_counts();
    };
    unsigned workers = std::min<unsigned>(
        cfg.worker_count, item_count > 0 ? static_cast<unsigned>(item_count) : 1u);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SearchOutcome out;
    out.restricted_first_block = items.restricted;
    out.stats.nodes = sh.nodes.load();
    out.stats.memo_hits = sh.memo_hits.load();
    out.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - sh.started)
            .count();

    int best = sh.best_item.load();
    if (best != INT_MAX) {
        const FoundCertificate& fc = sh.found.at(best);
        if (mode == SearchMode::mat) {
            auto ver = verify_mat_partition(a, fc.blocks);
            if (!ver.ok)
                throw std::logic_error("search produced a certificate that fails re-verification");
            out.mat_certificate = std::move(ver.certificate);
        } else {
            auto ver = verify_mat2_sequence(a, fc.steps);
            if (!ver.ok)
                throw std::logic_error("search produced a certificate that fails re-verification");
            out.mat2_certificate = std::move(ver.certificate);
        }
        out.verdict = SearchVerdict::certified;
        return out;
    }
    out.verdict = sh.over_budget.load() ? SearchVerdict::budget_exceeded
                                        : SearchVerdict::exhausted_none;
    return out;
}

// Every ordered set partition of `remaining` (ascending 1-based indices);
// leaf() is called on each complete partition and returns true to stop.
template <typename Leaf>
void all_ordered_partitions(const std::vector<int>& remaining,
                            std::vector<std::vector<int>>& blocks, std::uint64_t& leaves,
                            const Leaf& leaf, bool& stop) {
    if (stop) return;
    if (remaining.empty()) {
        ++leaves;
        stop = leaf(blocks);
        return;
    }
    std::size_t r = remaining.size();
    for (std::uint64_t mask = 1; mask < (1ULL << r) && !stop; ++mask) {
        std::vector<int> part, rest;
        for (std::size_t i = 0; i < r; ++i)
            ((mask >> i) & 1 ? part : rest).push_back(remaining[i]);
        blocks.push_back(std::move(part));
        all_ordered_partitions(rest, blocks, leaves, leaf, stop);
        blocks.pop_back();
    }
}

}  // namespace

SearchOutcome search_mat(const Arrangement& a, const SearchConfig& cfg) {
    return run_search(a, cfg, SearchMode::mat);
}

SearchOutcome search_mat2(const Arrangement& a, const SearchConfig& cfg) {
    return run_search(a, cfg, SearchMode::mat2);
}

SearchOutcome brute_force_oracle(const Arrangement& a, SearchMode mode) {
    if (a.size() > 8)
        throw std::invalid_argument("brute-force oracle handles at most 8 hyperplanes");
    auto begin = std::chrono::steady_clock::now();
    SearchOutcome out;
    std::vector<int> all(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) all[i] = static_cast<int>(i) + 1;
    std::vector<std::vector<int>> blocks;
    std::uint64_t leaves = 0;
    bool stop = false;

    if (mode == SearchMode::mat) {
        all_ordered_partitions(all, blocks, leaves,
                               [&](const std::vector<std::vector<int>>& bs) {
                                   auto ver = verify_mat_partition(a, bs);
                                   if (ver.ok) {
                                       out.mat_certificate = ver.certificate;
                                       return true;
                                   }
                                   return false;
                               },
                               stop);
    } else {
        unsigned dim = a.dim();
        all_ordered_partitions(
            all, blocks, leaves,
            [&](const std::vector<std::vector<int>>& bs) {
                for (const auto& b : bs)
                    if (b.size() > dim) return false;  // slots s..dim cannot exist
                // every per-step assignment of members to slots
                std::vector<std::vector<int>> perms(bs.begin(), bs.end());
                bool found = false;
                auto assemble = [&](auto&& self, std::size_t k) -> void {
                    if (k == perms.size()) {
                        std::vector<Mat2Step> steps;
                        for (const auto& p : perms) {
                            Mat2Step st;
                            st.s = static_cast<int>(dim - p.size() + 1);
                            int slot = st.s;
                            for (int idx : p) st.slotted.emplace_back(idx, slot++);
                            steps.push_back(std::move(st));
                        }
                        auto ver = verify_mat2_sequence(a, steps);
                        if (ver.ok) {
                            out.mat2_certificate = ver.certificate;
                            found = true;
                        }
                        return;
                    }
                    std::sort(perms[k].begin(), perms[k].end());
                    do {
                        self(self, k + 1);
                        if (found) return;
                    } while (std::next_permutation(perms[k].begin(), perms[k].end()));
                };
                assemble(assemble, 0);
                return found;
            },
            stop);
    }
    out.stats.nodes = leaves;
    out.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin)
            .count();
    out.verdict = (out.mat_certificate || out.mat2_certificate) ? SearchVerdict::certified
                                                                : SearchVerdict::exhausted_none;
    return out;
}

}  // namespace matfree
