#ifndef MARKOFF_GROUPS_HPP
#define MARKOFF_GROUPS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace markoff::groups {

struct Perm {
    std::vector<std::uint16_t> img;  // images of 0..n-1
    bool operator==(const Perm&) const = default;
};

struct Mat2 {
    std::uint32_t p = 0;
    std::uint32_t a = 0, b = 0, c = 0, d = 0;  // row-major
    bool operator==(const Mat2&) const = default;
};

using Label = std::variant<Perm, Mat2>;

Label compose(const Label& f, const Label& g);  // f after g
Label invert(const Label& f);
std::string serialize(const Label& f);

/// A finite group presented by a sorted element list with fast index-level
/// multiplication.  A dense multiplication table is kept when the order is
/// at most 4096; beyond that products are formed on demand through the
/// labels and a memoized label -> index map.
class FiniteGroup {
public:
    /// Closure of the generators; throws when the cap is exceeded or a
    /// generator is not invertible.
    static FiniteGroup closure(std::vector<Label> generators, std::size_t cap = 100000);
    /// Wrap a known-closed element list (generators must appear in it).
    static FiniteGroup from_elements(std::vector<Label> elements, std::vector<Label> generators);

    std::size_t size() const { return elements_.size(); }
    std::uint32_t id() const { return id_; }
    std::uint32_t mul(std::uint32_t i, std::uint32_t j) const;
    std::uint32_t inv(std::uint32_t i) const { return inv_[i]; }
    std::uint32_t conj(std::uint32_t s, std::uint32_t g) const { return mul(mul(s, g), inv(s)); }
    std::uint32_t commutator(std::uint32_t g, std::uint32_t h) const {
        return mul(mul(g, h), mul(inv(g), inv(h)));
    }

    std::uint64_t order(std::uint32_t i) const { return order_[i]; }
    const std::vector<std::uint32_t>& generators() const { return gens_; }
    const Label& label(std::uint32_t i) const { return elements_[i]; }
    std::uint32_t index_of(const Label& l) const;  // throws if absent

    std::uint32_t num_classes() const { return static_cast<std::uint32_t>(class_reps_.size()); }
    std::uint32_t class_of(std::uint32_t g) const { return class_id_[g]; }
    std::uint32_t class_rep(std::uint32_t cls) const { return class_reps_[cls]; }
    /// s with s g s^-1 = class_rep(class_of(g)).
    std::uint32_t conj_to_rep(std::uint32_t g) const { return conj_to_rep_[g]; }
    std::vector<std::uint32_t> class_members(std::uint32_t cls) const;

    const std::vector<std::uint32_t>& center() const { return center_; }
    std::vector<std::uint32_t> centralizer(std::uint32_t g) const;
    /// Elements commuting with every one of the given elements.
    std::vector<std::uint32_t> centralizer_of_set(const std::vector<std::uint32_t>& gs) const;

    /// Subgroup generated by the given elements, as a sorted index list.
    std::vector<std::uint32_t> subgroup_of(const std::vector<std::uint32_t>& gens) const;
    std::vector<std::uint32_t> subgroup(std::uint32_t g, std::uint32_t h) const;
    bool is_generating_pair(std::uint32_t g, std::uint32_t h) const;
    /// Cyclic subgroup <g>.
    std::vector<std::uint32_t> cyclic(std::uint32_t g) const;

    /// Normal closure of the conjugacy class of g.
    std::vector<std::uint32_t> normal_closure(std::uint32_t g) const;
    bool is_simple() const;
    /// Largest ell-valuation of |N| over proper normal subgroups N.
    int max_proper_normal_valuation(std::uint64_t ell) const;

    static constexpr std::size_t kDenseLimit = 4096;

private:
    FiniteGroup() = default;
    void finalize();

    std::vector<Label> elements_;  // sorted by serialized label
    std::vector<std::string> serials_;
    std::unordered_map<std::string, std::uint32_t> lookup_;
    std::vector<Label> gen_labels_;
    std::vector<std::uint32_t> gens_;
    std::uint32_t id_ = 0;
    std::vector<std::uint32_t> inv_;
    std::vector<std::uint64_t> order_;
    std::vector<std::uint32_t> class_id_;
    std::vector<std::uint32_t> class_reps_;
    std::vector<std::uint32_t> conj_to_rep_;
    std::vector<std::uint32_t> center_;
    std::vector<std::uint16_t> table_;  // dense when size <= kDenseLimit
};

/// Parse a group spec: one generator per line, either
///   perm: (1 2 3)(4 5)
/// or
///   mat p a b c d
/// Blank lines and lines starting with '#' are ignored.
FiniteGroup parse_group_spec(std::istream& in);
FiniteGroup load_group_spec(const std::string& path);

/// SL2(F_p) by direct enumeration (no closure); |G| = p(p^2-1) is checked.
FiniteGroup sl2(std::uint32_t p);
/// Dihedral group of order 2k on k points; generators are the rotation
/// i -> i+1 and the reflection i -> -i.
FiniteGroup dihedral(std::uint32_t k);
/// Image of g under conjugation by a fixed nonsquare-determinant matrix;
/// only valid for groups built by sl2().
std::vector<std::uint32_t> nonsquare_det_twist(const FiniteGroup& G);

}  // namespace markoff::groups

#endif
