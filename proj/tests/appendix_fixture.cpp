#include "appendix_fixture.hpp"

#include <algorithm>
#include <map>

namespace fixture {

namespace {

struct Out {
    int m;
    std::vector<Entry>& v;
    std::string item;
    void add(int beta, std::set<int> r)
    {
        if (beta < 1 || beta > m) return;
        for (int x : r)
            if (x < 1 || x > m || x == beta) return;
        v.push_back({beta, r, item});
    }
    void subsets(int beta, std::set<int> r)
    {
        std::vector<int> e(r.begin(), r.end());
        for (unsigned mask = 0; mask < (1u << e.size()); ++mask) {
            std::set<int> s;
            for (size_t i = 0; i < e.size(); ++i)
                if (mask >> i & 1) s.insert(e[i]);
            add(beta, s);
        }
    }
};

void part_one(char f, int m, std::vector<Entry>& v)
{
    Out o{m, v, std::string("1(") + char('a' + std::string("ABCDEF").find(f == 'F' ? 'F' : f)) + ")"};
    if (f == 'F') o.item = "1(h)";
    if (f == 'E') o.item = m == 6 ? "1(e)" : m == 7 ? "1(f)" : "1(g)";
    switch (f) {
    case 'A':
        if (m < 3) break;
        for (int k = 3; k <= m; ++k) o.add(k, {1, k - 1});
        for (int k = 4; k <= m; ++k)
            for (int i = 1; i <= k - 2; ++i) o.add(k, {i, i + 1});
        break;
    case 'B':
        if (m < 3) break;
        for (int k = 3; k <= m; ++k) {
            o.add(k, {1, k - 1});
            for (int i = 1; i <= k - 2; ++i) o.add(k, {i, i + 1});
        }
        for (int k = 1; k <= m - 2; ++k) o.add(k, {m - 1, m});
        o.add(m - 3, {m - 2, m});
        break;
    case 'C':
        if (m < 3) break;
        for (int k = 3; k <= m; ++k) o.add(k, {1, k - 1});
        for (int k = 4; k <= m; ++k)
            for (int i = 1; i <= k - 2; ++i) o.add(k, {i, i + 1});
        for (int k = 1; k <= m - 2; ++k)
            for (int i = 1; i <= k - 2; ++i) o.add(k, {i, i + 1});
        break;
    case 'D': {
        if (m < 4) break;
        std::vector<int> ks;
        for (int k = 3; k <= m - 2; ++k) ks.push_back(k);
        ks.push_back(m);
        for (int k : ks) o.add(k, {1, k - 1});
        for (int k : ks)
            if (k >= 4)
                for (int i = 1; i <= k - 2; ++i) o.add(k, {i, i + 1});
        for (int k = 1; k <= m - 4; ++k) o.add(k, {m - 1, m});
        if (m >= 5) {
            o.add(m - 3, {m - 2, m - 1});
            o.add(m - 3, {m - 2, m});
            o.add(m - 3, {m - 1, m});
            o.add(m - 2, {m - 1, m});
        }
        break;
    }
    case 'E':
        if (m == 6) {
            o.add(1, {2, 3});
            for (auto r : {std::set<int>{1, 6}, {1, 3}, {3, 4}}) o.add(2, r);
            for (auto r : {std::set<int>{2, 6}, {2, 4}, {4, 5}, {5, 6}}) o.add(3, r);
            o.add(4, {1, 3});
        } else if (m == 7) {
            o.add(1, {2, 3});
            for (auto r : {std::set<int>{1, 7}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}}) o.add(2, r);
            for (auto r : {std::set<int>{2, 7}, {2, 4}, {4, 5}, {5, 6}, {6, 7}}) o.add(3, r);
            for (auto r : {std::set<int>{1, 3}, {5, 7}, {5, 6}, {6, 7}}) o.add(4, r);
            for (auto r : {std::set<int>{1, 2}, {1, 3}, {3, 4}, {2, 4}, {6, 7}}) o.add(5, r);
            o.add(6, {2, 5});
        } else if (m == 8) {
            o.add(1, {2, 3});
            for (auto r : {std::set<int>{1, 8}, {1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}}) o.add(2, r);
            for (auto r : {std::set<int>{2, 8}, {2, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}}) o.add(3, r);
            for (auto r : {std::set<int>{1, 3}, {5, 8}, {5, 6}, {6, 7}, {7, 8}}) o.add(4, r);
            for (auto r : {std::set<int>{1, 2}, {1, 3}, {3, 4}, {2, 4}, {6, 8}, {6, 7}, {7, 8}}) o.add(5, r);
            o.add(6, {2, 5});
            o.add(6, {7, 8});
        }
        break;
    case 'F':
        o.add(1, {3, 4});
        o.add(1, {2, 3});
        o.add(2, {3, 4});
        o.add(3, {1, 2});
        o.add(4, {2, 3});
        o.add(4, {1, 3});
        break;
    default: break;
    }
}

void part_two(char f, int m, std::vector<Entry>& v)
{
    Out o{m, v, "2 (R empty)"};
    for (int b = 1; b <= m; ++b) o.add(b, {});
    switch (f) {
    case 'A':
        o.item = "2(a)";
        o.add(1, {2});
        if (m >= 3) o.add(1, {m});
        for (int k = 2; 2 * k <= m; ++k) {
            o.subsets(k, {1, k + 1});
            o.subsets(k, {1, m});
            if (k >= 3) {
                o.subsets(k, {k - 1, k + 1});
                o.subsets(k, {k - 1, m});
            }
        }
        if (m % 2 == 1) {
            int k = (m + 1) / 2;
            o.subsets(k, {1, m});
            o.add(k, {k - 1});
            o.add(k, {1, k + 1});
            if (m >= 5) o.add(k, {k - 1, k + 1});
        }
        break;
    case 'B':
        o.item = "2(b)";
        if (m == 3) o.add(1, {3});
        for (int k = 2; k <= m - 3; ++k) {
            o.add(k, {1});
            if (k >= 3) o.add(k, {k - 1});
        }
        if (m >= 4) {
            o.subsets(m - 2, {1, m});
            if (m >= 5) o.subsets(m - 2, {m - 3, m});
        }
        o.subsets(m - 1, {1, m});
        if (m >= 4) o.add(m - 1, {m - 2});
        if (m >= 5) o.add(m - 1, {m - 2, m});
        o.add(m, {1});
        o.add(m, {m - 1});
        break;
    case 'C':
        o.item = "2(c)";
        o.add(1, {2});
        for (int k = 2; k <= m - 1; ++k) {
            o.subsets(k, {1, k + 1});
            if (k >= 3 && m >= 4) o.subsets(k, {k - 1, k + 1});
        }
        o.add(m, {1});
        if (m >= 3) o.add(m, {m - 1});
        break;
    case 'D':
        o.item = "2(d)";
        if (m >= 6)
            for (int k = 2; k <= m - 4; ++k) {
                o.add(k, {1});
                if (k >= 3 && m >= 7) o.add(k, {k - 1});
            }
        o.add(m - 3, {m - 1});
        if (m >= 5) o.subsets(m - 3, {1, m - 1});
        if (m >= 6) o.subsets(m - 3, {m - 4, m - 1});
        o.add(m - 2, {1});
        o.add(m - 2, {1, m - 1});
        o.add(m - 2, {1, m - 1, m});
        if (m >= 5) {
            o.subsets(m - 2, {m - 3, m - 1});
            o.add(m - 2, {m - 3, m - 1, m});
        }
        o.add(m, {1});
        o.add(m, {m - 1});
        break;
    case 'E': {
        o.item = m == 6 ? "2(e)" : m == 7 ? "2(f)" : "2(g)";
        int last = m;
        o.add(2, {1});
        if (m >= 7) o.add(2, {last});
        o.subsets(3, {1, 2});
        o.subsets(3, {1, m == 6 ? 6 : last});
        for (int i : {1, 3})
            for (int j : {5, m == 6 ? 6 : last}) o.subsets(4, {2, i, j});
        if (m >= 7)
            for (int i : {1, 2})
                for (int j : {6, last}) o.subsets(5, {i, j});
        if (m == 7) o.add(6, {7});
        if (m == 8) {
            o.add(6, {7});
            o.add(6, {8});
            o.add(7, {8});
        }
        break;
    }
    case 'F':
        o.item = "2(h)";
        o.add(1, {4});
        o.subsets(2, {1, 3});
        o.subsets(2, {1, 4});
        o.subsets(3, {1, 4});
        o.subsets(3, {2, 4});
        break;
    case 'G':
        o.item = "2(i)";
        o.add(1, {2});
        o.add(2, {1});
        break;
    default: break;
    }
}

}  // namespace

std::vector<Entry> appendix_list(char family, int rank, bool one)
{
    std::vector<Entry> v;
    if (one) part_one(family, rank, v);
    else part_two(family, rank, v);
    return v;
}

Entry canonical(char f, int m, const Entry& e)
{
    std::vector<std::vector<int>> syms;
    std::vector<int> id(m + 1);
    for (int i = 0; i <= m; ++i) id[i] = i;
    syms.push_back(id);
    if (f == 'A') {
        auto p = id;
        for (int i = 1; i <= m; ++i) p[i] = m + 1 - i;
        syms.push_back(p);
    }
    if (f == 'D' && m >= 5) {
        auto p = id;
        std::swap(p[m], p[m - 1]);
        syms.push_back(p);
    }
    if (f == 'D' && m == 4) {
        int outer[3] = {1, 3, 4};
        int perm[3] = {1, 3, 4};
        while (std::next_permutation(perm, perm + 3)) {
            auto p = id;
            for (int k = 0; k < 3; ++k) p[outer[k]] = perm[k];
            syms.push_back(p);
        }
    }
    if (f == 'E' && m == 6) syms.push_back({0, 6, 2, 5, 4, 3, 1});
    Entry best = e;
    for (auto& p : syms) {
        Entry c{p[e.beta], {}, e.item};
        for (int x : e.r) c.r.insert(p[x]);
        if (std::tie(c.beta, c.r) < std::tie(best.beta, best.r)) best = c;
    }
    return best;
}

namespace {

std::string slip_of(char f, int m, bool one, const Entry& e, bool enum_only)
{
    // guard printed as m >= 5
    if (f == 'B' && m == 4 && !one && enum_only && e.beta == 3 && e.r == std::set<int>{2, 4})
        return "B4 guard (m>=5 read as m>=4)";
    // third clause of 1(c) repeats the second; the C_{m-k} pairs are missing
    if (f == 'C' && one && enum_only && e.r.size() == 2) {
        int i = *e.r.begin(), k = e.beta;
        if (*e.r.rbegin() == i + 1 && k >= 1 && k <= m - 2 && i >= k + 1 && i <= m - 1)
            return "1(c) index range";
    }
    // D_m, beta = alpha_{m-2}, R = {alpha_{m-1}, alpha_m} sits in the wrong list
    if (f == 'D' && m >= 5 && e.beta == m - 2 && e.r == std::set<int>{m - 1, m} && one != enum_only)
        return "1(d)/2(d) misplaced entry";
    return {};
}

}  // namespace

std::vector<Mismatch> compare(char f, int m, bool one, const std::vector<std::pair<int, std::set<int>>>& enumerated)
{
    auto key = [](const Entry& e) { return std::make_pair(e.beta, e.r); };
    std::map<std::pair<int, std::set<int>>, Entry> printed, mine;
    for (auto& e : appendix_list(f, m, one)) {
        auto c = canonical(f, m, e);
        printed.emplace(key(c), c);
    }
    for (auto& [b, r] : enumerated) {
        auto c = canonical(f, m, Entry{b, r, ""});
        mine.emplace(key(c), c);
    }
    std::vector<Mismatch> out;
    for (auto& [k, e] : mine)
        if (!printed.count(k)) out.push_back({e, true, slip_of(f, m, one, e, true)});
    for (auto& [k, e] : printed)
        if (!mine.count(k)) out.push_back({e, false, slip_of(f, m, one, e, false)});
    return out;
}

}  // namespace fixture
