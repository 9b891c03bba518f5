#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qdm/errors.hpp"

namespace qdm {

/// A finite group given by its Cayley table. Element indices run 0..order-1
/// and index 0 is always the identity (build_group relabels if necessary).
/// Immutable after construction and cheap to copy (shared storage).
class FiniteGroup {
  public:
    FiniteGroup() = default;

    int order() const { return data_->order; }
    int mul(int a, int b) const { return data_->cayley[a * data_->order + b]; }
    int inv(int a) const { return data_->inverse[a]; }
    static constexpr int identity() { return 0; }
    int conj(int h, int g) const { return mul(mul(h, g), inv(h)); }  // h g h^-1

    const std::string& name() const { return data_->name; }

    bool same_as(const FiniteGroup& other) const;

    /// Validates the table (Latin square, associativity, identity, inverses),
    /// relabels so the identity is element 0, and fills the inverse table.
    /// Throws NotAGroup naming the violating element or triple.
    static FiniteGroup build(const std::vector<std::vector<int>>& cayley,
                             std::string name = "");

    /// Built-in groups accepted by name: z2..z8, s3, d4, q8.
    static FiniteGroup builtin(const std::string& name);

    /// Plain-text ingestion: first line order n, then n rows of n indices.
    /// Falls back to builtin() when the argument names a known group.
    static FiniteGroup load(const std::string& name_or_path);

  private:
    struct Data {
        int order = 0;
        std::vector<int> cayley;   // row-major order x order
        std::vector<int> inverse;  // element -> inverse
        std::string name;
    };
    std::shared_ptr<const Data> data_;
};

/// Conjugacy classes, each listing its elements in increasing index order.
/// Classes are ordered by their representative (minimal element index).
struct ConjugacyData {
    std::vector<std::vector<int>> classes;
    std::vector<int> class_of;        // element -> class index
    std::vector<int> representative;  // class -> minimal element index
};

ConjugacyData conjugacy_classes(const FiniteGroup& g);

/// {h : hr = rh}, sorted; always contains the identity and r.
std::vector<int> centralizer(const FiniteGroup& g, int r);

/// A subgroup repackaged as a standalone group, with the index map back to
/// the parent. Identity stays at index 0 because subgroup elements are kept
/// sorted and the parent identity is 0.
struct Subgroup {
    FiniteGroup group;
    std::vector<int> elements;  // subgroup index -> parent element index

    int to_parent(int sub_index) const { return elements[sub_index]; }
    int from_parent(int parent_element) const;
};

Subgroup subgroup_as_group(const FiniteGroup& g, std::vector<int> elements,
                           std::string name = "");

}  // namespace qdm
