#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpalg {

enum class GroupKind { IntegerLattice, DiscreteHeisenberg, CyclicGroup, MeshLine };

/// How |x| is measured: the word metric of the generating set, or (MeshLine
/// only) the absolute value of the real position h*k.
enum class LengthMode { Word, Absolute };

/// An element of one of the concrete group models, stored as an integer
/// coordinate tuple. MeshLine elements x = h*k store the integer k.
class GroupElement {
public:
    GroupElement() = default;
    GroupElement(std::initializer_list<std::int64_t> coords);
    explicit GroupElement(const std::vector<std::int64_t>& coords);

    int dim() const { return dim_; }
    std::int64_t operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    std::int64_t& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    bool operator==(const GroupElement& o) const;
    bool operator<(const GroupElement& o) const;  // lexicographic

    std::string str() const;

private:
    std::array<std::int64_t, 3> c_{{0, 0, 0}};
    int dim_ = 1;
    friend class GroupModel;
};

class ball_cap_error : public std::runtime_error {
public:
    explicit ball_cap_error(const std::string& what) : std::runtime_error(what) {}
};

/// A concrete compactly generated group of polynomial growth with a fixed
/// symmetric generating set (containing the identity), word metric and ball
/// enumeration. Immutable after construction; the Heisenberg sphere cache is
/// shared and guarded internally, so models may be copied and read from
/// several threads.
class GroupModel {
public:
    static GroupModel integer_lattice(int d);
    static GroupModel heisenberg(int radius_cap = 24);
    static GroupModel cyclic(int n);
    static GroupModel mesh_line(double h, int radius_cap = 2000000);

    GroupKind kind() const;
    int dim() const;
    double haar_mass() const;        // 1 for discrete kinds, h for MeshLine
    double mesh_step() const;        // h (MeshLine), 1 otherwise
    int cyclic_order() const;        // N (CyclicGroup), 0 otherwise
    int radius_cap() const;
    bool abelian() const;

    GroupElement identity() const;
    GroupElement canonical(const GroupElement& x) const;   // reduce mod N etc.
    GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;
    GroupElement power(const GroupElement& a, std::int64_t n) const;

    std::vector<GroupElement> generating_set() const;      // symmetric, contains e

    /// Word length min{n >= 1 : x in U^n}; the identity has length 1.
    int word_length(const GroupElement& x) const;
    /// |x| in the requested mode, as a real number. Word mode returns
    /// word_length; Absolute mode (MeshLine) returns |h*k|.
    double length(const GroupElement& x, LengthMode mode = LengthMode::Word) const;

    /// All x with word_length(x) <= n, sorted by coordinates, no duplicates.
    std::vector<GroupElement> ball(int n) const;
    std::size_t ball_size(int n) const;

    bool same_model(const GroupModel& o) const;
    std::string descriptor() const;   // short text form, e.g. "Z^2", "cyclic:16"

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    explicit GroupModel(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
};

struct GrowthFit {
    double C = 0.0;
    double Q = 0.0;
    std::vector<std::size_t> ball_sizes;   // |U^n| for n = 1..n_max
};

/// Least-squares fit of log|U^n| against log n over n in [n_max/2, n_max];
/// C is raised afterwards so that |U^n| <= C n^Q holds on every computed n.
GrowthFit growth_fit(const GroupModel& model, int n_max);

}  // namespace lpalg
