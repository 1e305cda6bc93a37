#include "lpalg/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace lpalg {

GroupElement::GroupElement(std::initializer_list<std::int64_t> coords) {
    if (coords.size() == 0 || coords.size() > 3)
        throw std::invalid_argument("GroupElement: 1..3 coordinates expected");
    dim_ = static_cast<int>(coords.size());
    int i = 0;
    for (auto v : coords) c_[static_cast<std::size_t>(i++)] = v;
}

GroupElement::GroupElement(const std::vector<std::int64_t>& coords) {
    if (coords.empty() || coords.size() > 3)
        throw std::invalid_argument("GroupElement: 1..3 coordinates expected");
    dim_ = static_cast<int>(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) c_[i] = coords[i];
}

bool GroupElement::operator==(const GroupElement& o) const {
    return dim_ == o.dim_ && c_ == o.c_;
}

bool GroupElement::operator<(const GroupElement& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_;
    return c_ < o.c_;
}

std::string GroupElement::str() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < dim_; ++i) {
        if (i) os << ',';
        os << c_[static_cast<std::size_t>(i)];
    }
    os << ')';
    return os.str();
}

namespace {

std::int64_t mod_reduce(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace

struct GroupModel::Impl {
    GroupKind kind;
    int dim = 1;
    double h = 1.0;       // MeshLine step
    int n_cyc = 0;        // CyclicGroup order
    int radius_cap = 0;

    // Heisenberg BFS cache: element -> word length, grown sphere by sphere.
    mutable std::mutex bfs_mutex;
    mutable std::map<GroupElement, int> bfs_length;
    mutable std::vector<GroupElement> bfs_frontier;
    mutable int bfs_radius = 0;

    void grow_bfs(int target, const GroupModel& model) const {
        std::lock_guard<std::mutex> lock(bfs_mutex);
        if (bfs_radius == 0 && bfs_length.empty()) {
            GroupElement e{0, 0, 0};
            bfs_length.emplace(e, 0);
            bfs_frontier.push_back(e);
        }
        if (target > radius_cap)
            throw ball_cap_error("heisenberg radius cap " + std::to_string(radius_cap) +
                                 " exceeded (requested " + std::to_string(target) + ")");
        const auto gens = model.generating_set();
        while (bfs_radius < target) {
            std::vector<GroupElement> next;
            for (const auto& p : bfs_frontier) {
                for (const auto& g : gens) {
                    GroupElement r = model.multiply(p, g);
                    if (bfs_length.emplace(r, bfs_radius + 1).second) next.push_back(r);
                }
            }
            bfs_frontier = std::move(next);
            ++bfs_radius;
        }
    }
};

GroupModel GroupModel::integer_lattice(int d) {
    if (d < 1 || d > 3) throw std::invalid_argument("integer_lattice: d in 1..3");
    auto impl = std::make_shared<Impl>();
    impl->kind = GroupKind::IntegerLattice;
    impl->dim = d;
    impl->radius_cap = d == 1 ? 10000000 : (d == 2 ? 4000 : 250);
    return GroupModel(std::move(impl));
}

GroupModel GroupModel::heisenberg(int radius_cap) {
    auto impl = std::make_shared<Impl>();
    impl->kind = GroupKind::DiscreteHeisenberg;
    impl->dim = 3;
    impl->radius_cap = radius_cap;
    return GroupModel(std::move(impl));
}

GroupModel GroupModel::cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic: order must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = GroupKind::CyclicGroup;
    impl->dim = 1;
    impl->n_cyc = n;
    impl->radius_cap = n;
    return GroupModel(std::move(impl));
}

GroupModel GroupModel::mesh_line(double h, int radius_cap) {
    if (!(h > 0)) throw std::invalid_argument("mesh_line: step must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = GroupKind::MeshLine;
    impl->dim = 1;
    impl->h = h;
    impl->radius_cap = radius_cap;
    return GroupModel(std::move(impl));
}

GroupKind GroupModel::kind() const { return impl_->kind; }
int GroupModel::dim() const { return impl_->dim; }
double GroupModel::haar_mass() const { return impl_->kind == GroupKind::MeshLine ? impl_->h : 1.0; }
double GroupModel::mesh_step() const { return impl_->h; }
int GroupModel::cyclic_order() const { return impl_->n_cyc; }
int GroupModel::radius_cap() const { return impl_->radius_cap; }
bool GroupModel::abelian() const { return impl_->kind != GroupKind::DiscreteHeisenberg; }

GroupElement GroupModel::identity() const {
    GroupElement e;
    e.dim_ = impl_->dim;
    return e;
}

GroupElement GroupModel::canonical(const GroupElement& x) const {
    if (x.dim() != impl_->dim) throw std::invalid_argument("element/model dimension mismatch");
    if (impl_->kind == GroupKind::CyclicGroup) {
        GroupElement r = x;
        r[0] = mod_reduce(x[0], impl_->n_cyc);
        return r;
    }
    return x;
}

GroupElement GroupModel::multiply(const GroupElement& a, const GroupElement& b) const {
    if (a.dim() != impl_->dim || b.dim() != impl_->dim)
        throw std::invalid_argument("element/model dimension mismatch");
    GroupElement r = a;
    switch (impl_->kind) {
        case GroupKind::IntegerLattice:
        case GroupKind::MeshLine:
            for (int i = 0; i < impl_->dim; ++i) r[i] = a[i] + b[i];
            return r;
        case GroupKind::CyclicGroup:
            r[0] = mod_reduce(a[0] + b[0], impl_->n_cyc);
            return r;
        case GroupKind::DiscreteHeisenberg:
            r[0] = a[0] + b[0];
            r[1] = a[1] + b[1];
            r[2] = a[2] + b[2] + a[0] * b[1];
            return r;
    }
    throw std::logic_error("unreachable");
}

GroupElement GroupModel::inverse(const GroupElement& a) const {
    if (a.dim() != impl_->dim) throw std::invalid_argument("element/model dimension mismatch");
    GroupElement r = a;
    switch (impl_->kind) {
        case GroupKind::IntegerLattice:
        case GroupKind::MeshLine:
            for (int i = 0; i < impl_->dim; ++i) r[i] = -a[i];
            return r;
        case GroupKind::CyclicGroup:
            r[0] = mod_reduce(-a[0], impl_->n_cyc);
            return r;
        case GroupKind::DiscreteHeisenberg:
            // (a,b,c)^{-1} = (-a,-b,-c+ab)
            r[0] = -a[0];
            r[1] = -a[1];
            r[2] = -a[2] + a[0] * a[1];
            return r;
    }
    throw std::logic_error("unreachable");
}

GroupElement GroupModel::power(const GroupElement& a, std::int64_t n) const {
    if (n < 0) return power(inverse(a), -n);
    GroupElement acc = identity();
    GroupElement base = canonical(a);
    while (n > 0) {
        if (n & 1) acc = multiply(acc, base);
        base = multiply(base, base);
        n >>= 1;
    }
    return acc;
}

std::vector<GroupElement> GroupModel::generating_set() const {
    std::vector<GroupElement> gens;
    switch (impl_->kind) {
        case GroupKind::IntegerLattice:
        case GroupKind::MeshLine: {
            gens.push_back(identity());
            for (int i = 0; i < impl_->dim; ++i) {
                GroupElement p = identity(), m = identity();
                p[i] = 1;
                m[i] = -1;
                gens.push_back(p);
                gens.push_back(m);
            }
            break;
        }
        case GroupKind::CyclicGroup: {
            gens.push_back(identity());
            if (impl_->n_cyc > 1) {
                GroupElement p = identity(), m = identity();
                p[0] = 1;
                m[0] = mod_reduce(-1, impl_->n_cyc);
                gens.push_back(p);
                if (!(m == p)) gens.push_back(m);
            }
            break;
        }
        case GroupKind::DiscreteHeisenberg: {
            gens.push_back(identity());
            GroupElement x{1, 0, 0}, xi{-1, 0, 0}, y{0, 1, 0}, yi{0, -1, 0};
            gens.insert(gens.end(), {x, xi, y, yi});
            break;
        }
    }
    std::sort(gens.begin(), gens.end());
    return gens;
}

int GroupModel::word_length(const GroupElement& xin) const {
    GroupElement x = canonical(xin);
    switch (impl_->kind) {
        case GroupKind::IntegerLattice:
        case GroupKind::MeshLine: {
            std::int64_t s = 0;
            for (int i = 0; i < impl_->dim; ++i) s += std::llabs(x[i]);
            return static_cast<int>(std::max<std::int64_t>(1, s));
        }
        case GroupKind::CyclicGroup: {
            std::int64_t k = x[0];
            std::int64_t d = std::min(k, impl_->n_cyc - k);
            return static_cast<int>(std::max<std::int64_t>(1, d));
        }
        case GroupKind::DiscreteHeisenberg: {
            {
                std::lock_guard<std::mutex> lock(impl_->bfs_mutex);
                auto it = impl_->bfs_length.find(x);
                if (it != impl_->bfs_length.end()) return std::max(1, it->second);
            }
            for (int n = impl_->bfs_radius + 1; n <= impl_->radius_cap; ++n) {
                impl_->grow_bfs(n, *this);
                std::lock_guard<std::mutex> lock(impl_->bfs_mutex);
                auto it = impl_->bfs_length.find(x);
                if (it != impl_->bfs_length.end()) return std::max(1, it->second);
            }
            throw ball_cap_error("word_length: element " + x.str() + " outside radius cap " +
                                 std::to_string(impl_->radius_cap));
        }
    }
    throw std::logic_error("unreachable");
}

double GroupModel::length(const GroupElement& x, LengthMode mode) const {
    if (mode == LengthMode::Absolute) {
        if (impl_->kind != GroupKind::MeshLine)
            throw std::invalid_argument("absolute length mode is defined on MeshLine only");
        return std::abs(static_cast<double>(x[0])) * impl_->h;
    }
    return static_cast<double>(word_length(x));
}

std::vector<GroupElement> GroupModel::ball(int n) const {
    if (n < 0) throw std::invalid_argument("ball: n >= 0 required");
    if (n > impl_->radius_cap)
        throw ball_cap_error("ball radius " + std::to_string(n) + " exceeds cap " +
                             std::to_string(impl_->radius_cap));
    std::vector<GroupElement> out;
    switch (impl_->kind) {
        case GroupKind::IntegerLattice:
        case GroupKind::MeshLine: {
            const int d = impl_->dim;
            if (d == 1) {
                for (std::int64_t i = -n; i <= n; ++i) out.push_back(GroupElement{i});
            } else if (d == 2) {
                for (std::int64_t i = -n; i <= n; ++i)
                    for (std::int64_t j = -(n - std::llabs(i)); j <= n - std::llabs(i); ++j)
                        out.push_back(GroupElement{i, j});
            } else {
                for (std::int64_t i = -n; i <= n; ++i)
                    for (std::int64_t j = -(n - std::llabs(i)); j <= n - std::llabs(i); ++j) {
                        std::int64_t r = n - std::llabs(i) - std::llabs(j);
                        for (std::int64_t k = -r; k <= r; ++k) out.push_back(GroupElement{i, j, k});
                    }
            }
            break;
        }
        case GroupKind::CyclicGroup: {
            for (std::int64_t k = 0; k < impl_->n_cyc; ++k) {
                GroupElement x{k};
                if (std::min(k, impl_->n_cyc - k) <= n || k == 0) out.push_back(x);
            }
            break;
        }
        case GroupKind::DiscreteHeisenberg: {
            impl_->grow_bfs(n, *this);
            std::lock_guard<std::mutex> lock(impl_->bfs_mutex);
            for (const auto& [el, len] : impl_->bfs_length)
                if (len <= n) out.push_back(el);
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t GroupModel::ball_size(int n) const {
    switch (impl_->kind) {
        case GroupKind::IntegerLattice: {
            // closed forms avoid materializing large balls
            const std::int64_t nn = n;
            if (impl_->dim == 1) return static_cast<std::size_t>(2 * nn + 1);
            if (impl_->dim == 2) return static_cast<std::size_t>(2 * nn * nn + 2 * nn + 1);
            return ball(n).size();
        }
        case GroupKind::MeshLine:
            return static_cast<std::size_t>(2 * static_cast<std::int64_t>(n) + 1);
        case GroupKind::CyclicGroup:
            return std::min<std::size_t>(static_cast<std::size_t>(impl_->n_cyc),
                                         static_cast<std::size_t>(2 * n + 1));
        case GroupKind::DiscreteHeisenberg: {
            impl_->grow_bfs(n, *this);
            std::lock_guard<std::mutex> lock(impl_->bfs_mutex);
            std::size_t c = 0;
            for (const auto& [el, len] : impl_->bfs_length)
                if (len <= n) ++c;
            return c;
        }
    }
    throw std::logic_error("unreachable");
}

bool GroupModel::same_model(const GroupModel& o) const {
    if (impl_ == o.impl_) return true;
    return impl_->kind == o.impl_->kind && impl_->dim == o.impl_->dim &&
           impl_->n_cyc == o.impl_->n_cyc && impl_->h == o.impl_->h;
}

std::string GroupModel::descriptor() const {
    switch (impl_->kind) {
        case GroupKind::IntegerLattice:
            return impl_->dim == 1 ? "Z" : "Z^" + std::to_string(impl_->dim);
        case GroupKind::DiscreteHeisenberg:
            return "heisenberg";
        case GroupKind::CyclicGroup:
            return "cyclic:" + std::to_string(impl_->n_cyc);
        case GroupKind::MeshLine: {
            std::ostringstream os;
            os << "mesh:" << impl_->h;
            return os.str();
        }
    }
    return "?";
}

GrowthFit growth_fit(const GroupModel& model, int n_max) {
    if (n_max < 8) throw std::invalid_argument("growth_fit: n_max >= 8 required");
    GrowthFit fit;
    fit.ball_sizes.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) fit.ball_sizes.push_back(model.ball_size(n));

    // least squares on log-log over [n_max/2, n_max]
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int n = n_max / 2; n <= n_max; ++n) {
        double lx = std::log(static_cast<double>(n));
        double ly = std::log(static_cast<double>(fit.ball_sizes[static_cast<std::size_t>(n - 1)]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    double denom = cnt * sxx - sx * sx;
    fit.Q = (cnt * sxy - sx * sy) / denom;
    double logC = (sy - fit.Q * sx) / cnt;
    fit.C = std::exp(logC);
    // raise C so that |U^n| <= C n^Q on every computed n
    for (int n = 1; n <= n_max; ++n) {
        double bound = fit.C * std::pow(static_cast<double>(n), fit.Q);
        double actual = static_cast<double>(fit.ball_sizes[static_cast<std::size_t>(n - 1)]);
        if (actual > bound) fit.C = actual / std::pow(static_cast<double>(n), fit.Q);
    }
    return fit;
}

}  // namespace lpalg
