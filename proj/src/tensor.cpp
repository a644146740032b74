#include "symfield/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <unsupported/Eigen/MatrixFunctions>

#include "symfield/errors.hpp"

namespace symfield {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Enumerate the index assignments I: blocks of p -> {0..N-1} and report the
// induced (row, col) pair of each. Inclusive assignments are unrestricted;
// exclusive ones are injective across blocks. visit receives the values
// per block.
template <typename Visit>
void for_each_assignment(const Partition& p, int N, bool exclusive, Visit&& visit) {
    int nb = p.num_blocks();
    std::vector<int> value(nb, 0);
    std::vector<char> used(N, 0);
    auto rec = [&](auto&& self, int b) -> void {
        if (b == nb) {
            visit(value);
            return;
        }
        for (int v = 0; v < N; ++v) {
            if (exclusive && used[v]) continue;
            value[b] = v;
            used[v] = 1;
            self(self, b + 1);
            used[v] = 0;
        }
    };
    rec(rec, 0);
}

}  // namespace

std::vector<std::pair<std::int64_t, std::int64_t>> diagram_matrix(const Partition& p, int N,
                                                                  bool exclusive) {
    int k = p.k();
    if (ipow(N, k) > (1 << 20)) throw capacity_error("diagram_matrix: N^k too large");
    if (exclusive && p.num_blocks() > N)
        return {};  // no injective assignment exists
    std::vector<int> block_of_label(2 * k + 1);
    auto slot = [&](int l) { return l > 0 ? l : k + (-l); };
    for (int i = 0; i < p.num_blocks(); ++i)
        for (int l : p.blocks()[i]) block_of_label[slot(l)] = i;

    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for_each_assignment(p, N, exclusive, [&](const std::vector<int>& value) {
        std::int64_t row = 0, col = 0;
        for (int i = 1; i <= k; ++i) {
            col = col * N + value[block_of_label[slot(i)]];
            row = row * N + value[block_of_label[slot(-i)]];
        }
        out.emplace_back(row, col);
    });
    std::sort(out.begin(), out.end());
    return out;
}

Eigen::MatrixXd diagram_matrix_dense(const Partition& p, int N, bool exclusive) {
    std::int64_t dim = ipow(N, p.k());
    if (dim * dim > (1 << 24)) throw capacity_error("diagram_matrix_dense: N^2k too large");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
    for (auto [r, c] : diagram_matrix(p, N, exclusive)) M(r, c) = 1.0;
    return M;
}

double diagram_moment(const Partition& p, const std::vector<Eigen::MatrixXd>& mats,
                      bool exclusive) {
    int k = p.k();
    if (static_cast<int>(mats.size()) != k)
        throw validation_error("diagram_moment: need one matrix per column");
    int N = mats.empty() ? 1 : static_cast<int>(mats[0].rows());
    for (const auto& m : mats)
        if (m.rows() != N || m.cols() != N)
            throw validation_error("diagram_moment: matrices must be square of equal size");

    Partition tp = transpose(p);
    if (std::pow(static_cast<double>(N), tp.num_blocks()) > 1e8)
        throw capacity_error("diagram_moment: N^blocks too large");
    int nb = tp.num_blocks();
    std::vector<int> block_of_label(2 * k + 1);
    auto slot = [&](int l) { return l > 0 ? l : k + (-l); };
    for (int i = 0; i < nb; ++i)
        for (int l : tp.blocks()[i]) block_of_label[slot(l)] = i;

    double total = 0.0;
    if (!(exclusive && nb > N)) {
        for_each_assignment(tp, N, exclusive, [&](const std::vector<int>& value) {
            double prod = 1.0;
            for (int l = 1; l <= k && prod != 0.0; ++l)
                prod *= mats[l - 1](value[block_of_label[slot(l)]],
                                    value[block_of_label[slot(-l)]]);
            total += prod;
        });
    }
    return total / std::pow(static_cast<double>(N), num_cycles(p));
}

namespace {

// All partitions of {0..n-1} as block index vectors (owner[i] = block id),
// used to enumerate coarsenings of a diagram by merging its blocks.
void set_partitions(int n, std::vector<std::vector<int>>& out) {
    std::vector<int> owner(n, 0);
    auto rec = [&](auto&& self, int i, int max_used) -> void {
        if (i == n) {
            out.push_back(owner);
            return;
        }
        for (int b = 0; b <= max_used + 1; ++b) {
            owner[i] = b;
            self(self, i + 1, std::max(max_used, b));
        }
    };
    if (n == 0) {
        out.push_back({});
        return;
    }
    rec(rec, 0, -1);
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Number of joint index assignments that are constant on the blocks of
// grouped (a coarsening of the transpose diagram, given by merging its
// blocks) and satisfy I(+l) = sigma(I(-l)) for every column l. Components
// of the constraint graph contribute independently: a free component can sit
// anywhere (factor N), one constrained to return after g steps of sigma can
// sit on any point whose cycle length divides g.
double raw_constrained_count(const std::vector<std::vector<int>>& blocks, int k,
                             const CycleType& ct) {
    int nb = static_cast<int>(blocks.size());
    std::vector<int> block_of_label(2 * k + 1);
    auto slot = [&](int l) { return l > 0 ? l : k + (-l); };
    for (int i = 0; i < nb; ++i)
        for (int l : blocks[i]) block_of_label[slot(l)] = i;

    // Union-find with potentials: value(node) = sigma^weight(node) (value(root)).
    std::vector<int> parent(nb);
    std::vector<long long> weight(nb, 0);
    std::iota(parent.begin(), parent.end(), 0);
    std::map<int, long long> cycle_gcd;  // root -> gcd of closed-loop exponents

    auto find = [&](int x, long long* w) {
        long long acc = 0;
        while (parent[x] != x) {
            acc += weight[x];
            x = parent[x];
        }
        *w = acc;
        return x;
    };

    for (int l = 1; l <= k; ++l) {
        int a = block_of_label[slot(l)];   // value = sigma(value of b)
        int b = block_of_label[slot(-l)];
        long long wa = 0, wb = 0;
        int ra = find(a, &wa), rb = find(b, &wb);
        if (ra != rb) {
            parent[ra] = rb;
            weight[ra] = 1 + wb - wa;
            if (auto it = cycle_gcd.find(ra); it != cycle_gcd.end()) {
                long long g = it->second;
                cycle_gcd.erase(it);
                cycle_gcd[rb] = std::gcd(cycle_gcd.count(rb) ? cycle_gcd[rb] : 0, g);
            }
        } else {
            long long g = std::llabs(wa - (1 + wb));
            cycle_gcd[ra] = std::gcd(cycle_gcd.count(ra) ? cycle_gcd[ra] : 0, g);
        }
    }

    double total = 1.0;
    for (int i = 0; i < nb; ++i) {
        long long w = 0;
        if (find(i, &w) != i) continue;
        long long g = cycle_gcd.count(i) ? cycle_gcd[i] : 0;
        if (g == 0) {
            total *= static_cast<double>(ct.N);
        } else {
            long long pts = 0;
            for (auto [len, p] : ct.points_on)
                if (g % len == 0) pts += p;
            total *= static_cast<double>(pts);
        }
    }
    return total;
}

}  // namespace

double perm_exclusive_moment(const Partition& p, const CycleType& ct) {
    ct.validate();
    Partition tp = transpose(p);
    int nb = tp.num_blocks();
    if (nb > 10) throw capacity_error("perm_exclusive_moment: too many blocks");
    if (nb > ct.N) return 0.0;

    std::vector<std::vector<int>> owners;
    set_partitions(nb, owners);
    double total = 0.0;
    for (const auto& owner : owners) {
        int groups = *std::max_element(owner.begin(), owner.end()) + 1;
        std::vector<std::vector<int>> merged(groups);
        std::vector<int> size(groups, 0);
        for (int i = 0; i < nb; ++i) {
            auto& b = tp.blocks()[i];
            merged[owner[i]].insert(merged[owner[i]].end(), b.begin(), b.end());
            ++size[owner[i]];
        }
        double mu = 1.0;
        for (int g = 0; g < groups; ++g) {
            int m = size[g];
            mu *= (m % 2 == 0 ? -1.0 : 1.0) * factorial(m - 1);
        }
        total += mu * raw_constrained_count(merged, p.k(), ct);
    }
    return total / std::pow(static_cast<double>(ct.N), num_cycles(p));
}

double perm_inclusive_moment(const Partition& p, const CycleType& ct) {
    ct.validate();
    Partition tp = transpose(p);
    return raw_constrained_count(tp.blocks(), p.k(), ct) /
           std::pow(static_cast<double>(ct.N), num_cycles(p));
}

Eigen::MatrixXd perm_matrix(const std::vector<int>& perm) {
    int N = static_cast<int>(perm.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    for (int j = 0; j < N; ++j) M(perm[j], j) = 1.0;
    return M;
}

Eigen::MatrixXd perm_tensor_power(const std::vector<int>& perm, int k) {
    int N = static_cast<int>(perm.size());
    std::int64_t dim = ipow(N, k);
    if (dim > 4096) throw capacity_error("perm_tensor_power: N^k too large");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<int> digits(k, 0);
    for (std::int64_t col = 0; col < dim; ++col) {
        std::int64_t c = col, row = 0;
        for (int i = k - 1; i >= 0; --i) {
            digits[i] = static_cast<int>(c % N);
            c /= N;
        }
        for (int i = 0; i < k; ++i) row = row * N + perm[digits[i]];
        M(row, col) = 1.0;
    }
    return M;
}

std::vector<std::vector<int>> class_elements(const FiniteClass& c) {
    c.validate();
    if (c.N > 8) throw capacity_error("class_elements: N capped at 8");
    CycleType want = c.type();
    std::vector<int> perm(c.N);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        if (cycle_type_of(perm) == want) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Eigen::MatrixXd class_generator(const FiniteClass& c, int k) {
    std::int64_t dim = ipow(c.N, k);
    if (dim > 4096) throw capacity_error("class_generator: N^k too large");
    auto elems = class_elements(c);
    Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& sigma : elems) avg += perm_tensor_power(sigma, k);
    avg /= static_cast<double>(elems.size());
    avg -= Eigen::MatrixXd::Identity(dim, dim);
    double rate = static_cast<double>(c.N - 1) / static_cast<double>(c.moved());
    return rate * avg;
}

Eigen::MatrixXd walk_expectation_tensor(const FiniteClass& c, int k, double t) {
    Eigen::MatrixXd G = class_generator(c, k);
    Eigen::MatrixXd tG = t * G;
    return tG.exp();
}

double DiagramCumulants::value_of(const Partition& p) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == p) return value[i];
    throw validation_error("cumulants: partition not in basis");
}

DiagramCumulants extract_cumulants(const Eigen::MatrixXd& T, int N, int k) {
    if (k > 3) throw capacity_error("extract_cumulants: k capped at 3");
    if (N < 2 * k) throw validation_error("extract_cumulants: need N >= 2k");
    std::int64_t dim = ipow(N, k);
    if (T.rows() != dim || T.cols() != dim)
        throw validation_error("extract_cumulants: tensor shape mismatch");

    DiagramCumulants out;
    out.basis = enumerate_partitions(k, DiagramKind::All);
    int nb = static_cast<int>(out.basis.size());

    Eigen::MatrixXd G(nb, nb);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            G(i, j) = std::pow(static_cast<double>(N),
                               join(out.basis[i], out.basis[j]).num_blocks());
    Eigen::VectorXd b(nb);
    for (int i = 0; i < nb; ++i) {
        double s = 0.0;
        for (auto [r, c] : diagram_matrix(out.basis[i], N, false)) s += T(r, c);
        b(i) = s;
    }
    Eigen::VectorXd x = G.partialPivLu().solve(b);
    out.value.resize(nb);
    for (int i = 0; i < nb; ++i) {
        const Partition& p = out.basis[i];
        out.value[i] =
            x(i) * std::pow(static_cast<double>(N), p.num_blocks() - num_cycles(p));
    }
    return out;
}

}  // namespace symfield
