#include "qdm/group.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qdm {

bool FiniteGroup::same_as(const FiniteGroup& other) const {
    if (data_ == other.data_) return true;
    if (!data_ || !other.data_) return false;
    return data_->order == other.data_->order && data_->cayley == other.data_->cayley;
}

FiniteGroup FiniteGroup::build(const std::vector<std::vector<int>>& cayley, std::string name) {
    const int n = static_cast<int>(cayley.size());
    if (n == 0) throw NotAGroup("empty table");
    std::vector<int> table(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(cayley[a].size()) != n)
            throw NotAGroup("row " + std::to_string(a) + " is not of length " + std::to_string(n));
        for (int b = 0; b < n; ++b) {
            int v = cayley[a][b];
            if (v < 0 || v >= n)
                throw NotAGroup("entry (" + std::to_string(a) + "," + std::to_string(b) +
                                ") = " + std::to_string(v) + " out of range");
            table[a * n + b] = v;
        }
    }

    // Latin square: each row and column is a permutation.
    for (int a = 0; a < n; ++a) {
        std::vector<char> row(n, 0), col(n, 0);
        for (int b = 0; b < n; ++b) {
            if (row[table[a * n + b]]++)
                throw NotAGroup("row " + std::to_string(a) + " repeats element " +
                                std::to_string(table[a * n + b]));
            if (col[table[b * n + a]]++)
                throw NotAGroup("column " + std::to_string(a) + " repeats element " +
                                std::to_string(table[b * n + a]));
        }
    }

    // Two-sided identity.
    int id = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = table[e * n + a] == a && table[a * n + e] == a;
        if (ok) {
            id = e;
            break;
        }
    }
    if (id < 0) throw NotAGroup("no two-sided identity element");

    // Inverses.
    std::vector<int> inverse(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (table[a * n + b] == id && table[b * n + a] == id) {
                inverse[a] = b;
                break;
            }
        }
        if (inverse[a] < 0)
            throw NotAGroup("element " + std::to_string(a) + " has no inverse");
    }

    // Associativity over all triples.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a * n + b] * n + c] != table[a * n + table[b * n + c]])
                    throw NotAGroup("associativity fails at triple (" + std::to_string(a) + "," +
                                    std::to_string(b) + "," + std::to_string(c) + ")");

    // Relabel so the identity is element 0 (swap labels 0 and id).
    if (id != 0) {
        auto relabel = [&](int x) { return x == id ? 0 : (x == 0 ? id : x); };
        std::vector<int> t2(static_cast<size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                t2[relabel(a) * n + relabel(b)] = relabel(table[a * n + b]);
        table = std::move(t2);
        std::vector<int> inv2(n);
        for (int a = 0; a < n; ++a) inv2[relabel(a)] = relabel(inverse[a]);
        inverse = std::move(inv2);
    }

    auto data = std::make_shared<Data>();
    data->order = n;
    data->cayley = std::move(table);
    data->inverse = std::move(inverse);
    data->name = std::move(name);
    FiniteGroup g;
    g.data_ = std::move(data);
    return g;
}

namespace {

FiniteGroup make_cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup::build(t, "z" + std::to_string(n));
}

// S3 as permutations of {0,1,2} in lexicographic one-line order:
// 0:[012] 1:[021] 2:[102] 3:[120] 4:[201] 5:[210].  (s*t)(x) = s(t(x)).
FiniteGroup make_s3() {
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto find = [&](const int p[3]) {
        for (int i = 0; i < 6; ++i)
            if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
        return -1;
    };
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int c[3];
            for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
            t[a][b] = find(c);
        }
    return FiniteGroup::build(t, "s3");
}

// D4 = <r, s | r^4 = s^2 = 1, s r s = r^-1>, elements r^i s^j with
// index = i + 4*j:  0:e 1:r 2:r2 3:r3 4:s 5:rs 6:r2s 7:r3s.
FiniteGroup make_d4() {
    auto idx = [](int i, int j) { return (i & 3) + 4 * (j & 1); };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int i1 = a & 3, j1 = a >> 2, i2 = b & 3, j2 = b >> 2;
            // (r^i1 s^j1)(r^i2 s^j2) = r^(i1 + (-1)^j1 i2) s^(j1+j2)
            int i = j1 ? (i1 - i2 + 8) : (i1 + i2);
            t[a][b] = idx(i, j1 ^ j2);
        }
    return FiniteGroup::build(t, "d4");
}

// Q8 = {1, i, j, k, -1, -i, -j, -k} with index = unit + 4*sign.
FiniteGroup make_q8() {
    // Multiplication of units 1,i,j,k: result unit and sign.
    const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    // sign_mul[a][b] = 1 when unit_a * unit_b carries a minus sign:
    // i*i=j*j=k*k=-1, i*j=k, j*i=-k, j*k=i, k*j=-i, k*i=j, i*k=-j.
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ua = a & 3, sa = a >> 2, ub = b & 3, sb = b >> 2;
            int u = unit_mul[ua][ub];
            int s = sa ^ sb ^ sign_mul[ua][ub];
            t[a][b] = u + 4 * s;
        }
    return FiniteGroup::build(t, "q8");
}

}  // namespace

FiniteGroup FiniteGroup::builtin(const std::string& name) {
    if (name == "z2") return make_cyclic(2);
    if (name == "z3") return make_cyclic(3);
    if (name == "z4") return make_cyclic(4);
    if (name == "z5") return make_cyclic(5);
    if (name == "z6") return make_cyclic(6);
    if (name == "z7") return make_cyclic(7);
    if (name == "z8") return make_cyclic(8);
    if (name == "s3") return make_s3();
    if (name == "d4") return make_d4();
    if (name == "q8") return make_q8();
    throw NotAGroup("unknown built-in group '" + name + "'");
}

FiniteGroup FiniteGroup::load(const std::string& name_or_path) {
    static const char* builtins[] = {"z2", "z3", "z4", "z5", "z6", "z7", "z8", "s3", "d4", "q8"};
    for (const char* b : builtins)
        if (name_or_path == b) return builtin(name_or_path);

    std::ifstream in(name_or_path);
    if (!in) throw NotAGroup("cannot open group file '" + name_or_path + "'");
    int n = 0;
    if (!(in >> n) || n <= 0) throw NotAGroup("bad order line in '" + name_or_path + "'");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!(in >> t[a][b]))
                throw NotAGroup("truncated table in '" + name_or_path + "'");
    return build(t, name_or_path);
}

ConjugacyData conjugacy_classes(const FiniteGroup& g) {
    const int n = g.order();
    ConjugacyData out;
    out.class_of.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        if (out.class_of[a] >= 0) continue;
        std::vector<int> cls;
        for (int h = 0; h < n; ++h) {
            int c = g.conj(h, a);
            if (out.class_of[c] < 0) {
                out.class_of[c] = static_cast<int>(out.classes.size());
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        out.representative.push_back(cls.front());
        out.classes.push_back(std::move(cls));
    }
    return out;
}

std::vector<int> centralizer(const FiniteGroup& g, int r) {
    std::vector<int> out;
    for (int h = 0; h < g.order(); ++h)
        if (g.mul(h, r) == g.mul(r, h)) out.push_back(h);
    return out;
}

int Subgroup::from_parent(int parent_element) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), parent_element);
    if (it == elements.end() || *it != parent_element)
        throw Error("element " + std::to_string(parent_element) + " not in subgroup");
    return static_cast<int>(it - elements.begin());
}

Subgroup subgroup_as_group(const FiniteGroup& g, std::vector<int> elements, std::string name) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    const int k = static_cast<int>(elements.size());
    std::vector<int> pos(g.order(), -1);
    for (int i = 0; i < k; ++i) pos[elements[i]] = i;
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            int p = g.mul(elements[a], elements[b]);
            if (pos[p] < 0)
                throw NotAGroup("subset not closed under product: " + std::to_string(elements[a]) +
                                "*" + std::to_string(elements[b]));
            t[a][b] = pos[p];
        }
    Subgroup s;
    s.group = FiniteGroup::build(t, std::move(name));
    s.elements = std::move(elements);
    return s;
}

}  // namespace qdm
