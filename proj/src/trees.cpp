#include "pathlab/trees.hpp"

#include <algorithm>
#include <ostream>

namespace pathlab {

int RootedTree::height() const {
    int h = 0;
    for (int l : level) h = std::max(h, l);
    return h;
}

std::vector<std::vector<int>> RootedTree::children() const {
    std::vector<std::vector<int>> ch(size());
    for (int i = 1; i < size(); ++i) ch[parent[i]].push_back(i);
    return ch;
}

std::vector<std::size_t> RootedTree::level_sizes() const {
    std::vector<std::size_t> sizes(height() + 1, 0);
    for (int l : level) ++sizes[l];
    return sizes;
}

RootedTree build_wl_tree(const Graph& g, int v, int k, std::size_t node_budget) {
    RootedTree t;
    t.label = {v};
    t.parent = {-1};
    t.level = {0};
    std::size_t frontier_begin = 0;
    for (int lvl = 0; lvl < k; ++lvl) {
        std::size_t frontier_end = t.label.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (int w : g.adj[t.label[i]]) {
                if (t.label.size() >= node_budget)
                    throw BudgetExceeded(t.label.size(), node_budget);
                t.label.push_back(w);
                t.parent.push_back(static_cast<int>(i));
                t.level.push_back(lvl + 1);
            }
        }
        frontier_begin = frontier_end;
    }
    return t;
}

RootedTree build_path_tree(const PathSet& ps, int v, int k) {
    if (k > ps.K) throw InvalidParams("path tree height exceeds PathSet K");
    RootedTree t;
    t.label = {v};
    t.parent = {-1};
    t.level = {0};
    std::vector<std::vector<int>> children(1);
    auto child_with_label = [&](int node, int lab) -> int {
        for (int c : children[node])
            if (t.label[c] == lab) return c;
        return -1;
    };
    for (int len = 1; len <= k; ++len) {
        std::size_t count = ps.path_count(v, len);
        for (std::size_t i = 0; i < count; ++i) {
            auto p = ps.path(v, len, i);
            int cur = 0;
            for (int pos = 1; pos <= len; ++pos) {
                int lab = p[pos];
                int nxt = child_with_label(cur, lab);
                if (nxt == -1) {
                    nxt = t.size();
                    t.label.push_back(lab);
                    t.parent.push_back(cur);
                    t.level.push_back(pos);
                    children[cur].push_back(nxt);
                    children.emplace_back();
                }
                cur = nxt;
            }
        }
    }
    return t;
}

// --- hashing --------------------------------------------------------------

namespace {

constexpr std::uint64_t kHashSeed = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

TreeHash combine(const std::vector<TreeHash>& child_hashes) {
    std::uint64_t hi = mix64(kHashSeed + child_hashes.size());
    std::uint64_t lo = mix64(hi ^ 0xabcdef1234567890ULL);
    for (const TreeHash& h : child_hashes) {
        hi = mix64(hi ^ h.hi) + 0x165667b19e3779f9ULL * mix64(h.lo);
        lo = mix64(lo + h.lo) ^ mix64(h.hi ^ 0x27d4eb2f165667c5ULL);
    }
    return {hi, lo};
}

}  // namespace

std::string TreeHash::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s(32, '0');
    for (int i = 0; i < 16; ++i) {
        std::uint64_t w = i < 8 ? hi : lo;
        int shift = 60 - 8 * (i % 8);
        s[2 * i] = digits[(w >> (shift + 4)) & 0xf];
        s[2 * i + 1] = digits[(w >> shift) & 0xf];
    }
    return s;
}

TreeHash TreeHasher::hash(const RootedTree& t) {
    auto ch = t.children();
    // process nodes deepest level first so child codes exist before parents
    std::vector<int> order(t.size());
    for (int i = 0; i < t.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return t.level[a] > t.level[b]; });
    if (mode_ == Mode::Digest) {
        std::vector<TreeHash> code(t.size());
        for (int node : order) {
            std::vector<TreeHash> kids;
            kids.reserve(ch[node].size());
            for (int c : ch[node]) kids.push_back(code[c]);
            std::sort(kids.begin(), kids.end());
            code[node] = combine(kids);
        }
        return code[0];
    }
    std::vector<std::uint32_t> code(t.size());
    for (int node : order) {
        std::vector<std::uint32_t> kids;
        kids.reserve(ch[node].size());
        for (int c : ch[node]) kids.push_back(code[c]);
        std::sort(kids.begin(), kids.end());
        auto it = intern_.try_emplace(kids, static_cast<std::uint32_t>(intern_.size())).first;
        code[node] = it->second;
    }
    return {0, code[0]};
}

// --- diagnostics ----------------------------------------------------------

bool level_subset_check(const RootedTree& pt, const RootedTree& wt) {
    // per-level label multiset containment
    int h = std::max(pt.height(), wt.height());
    std::vector<std::map<int, long long>> pcnt(h + 1), wcnt(h + 1);
    for (int i = 0; i < pt.size(); ++i) ++pcnt[pt.level[i]][pt.label[i]];
    for (int i = 0; i < wt.size(); ++i) ++wcnt[wt.level[i]][wt.label[i]];
    for (int l = 0; l <= h; ++l)
        for (const auto& [lab, c] : pcnt[l])
            if (wcnt[l][lab] < c) return false;
    // every root-to-node label sequence of pt must occur in wt; wt children of
    // one node carry distinct labels, so wt acts as a deterministic trie
    auto wch = wt.children();
    auto wt_child = [&](int node, int lab) -> int {
        for (int c : wch[node])
            if (wt.label[c] == lab) return c;
        return -1;
    };
    if (pt.size() == 0 || wt.size() == 0) return pt.size() == wt.size();
    if (pt.label[0] != wt.label[0]) return false;
    std::vector<int> map_to_wt(pt.size(), -1);
    map_to_wt[0] = 0;
    for (int i = 1; i < pt.size(); ++i) {
        int wp = map_to_wt[pt.parent[i]];
        if (wp == -1) return false;
        map_to_wt[i] = wt_child(wp, pt.label[i]);
        if (map_to_wt[i] == -1) return false;
    }
    return true;
}

std::vector<bool> classify_tree_nodes(const RootedTree& wt) {
    std::vector<bool> redundant(wt.size(), false);
    // parents come before children in construction order
    for (int i = 1; i < wt.size(); ++i) {
        if (redundant[wt.parent[i]]) {
            redundant[i] = true;
            continue;
        }
        for (int a = wt.parent[i]; a != -1; a = wt.parent[a]) {
            if (wt.label[a] == wt.label[i]) {
                redundant[i] = true;
                break;
            }
        }
    }
    return redundant;
}

RootedTree prune_redundant(const RootedTree& wt) {
    std::vector<bool> redundant = classify_tree_nodes(wt);
    RootedTree out;
    std::vector<int> remap(wt.size(), -1);
    for (int i = 0; i < wt.size(); ++i) {
        if (redundant[i]) continue;
        remap[i] = out.size();
        out.label.push_back(wt.label[i]);
        out.parent.push_back(i == 0 ? -1 : remap[wt.parent[i]]);
        out.level.push_back(wt.level[i]);
    }
    return out;
}

void write_dot(const RootedTree& t, std::ostream& os) {
    os << "digraph tree {\n  node [shape=circle];\n";
    for (int i = 0; i < t.size(); ++i)
        os << "  n" << i << " [label=\"" << t.label[i] << "\"];\n";
    for (int i = 1; i < t.size(); ++i) os << "  n" << t.parent[i] << " -> n" << i << ";\n";
    os << "}\n";
}

}  // namespace pathlab
