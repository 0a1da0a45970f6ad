#pragma once

// Words as a shared DAG, compiled to MSLPs on demand.
//
// Every node is an input, a product of two earlier nodes or the inverse of an
// earlier node, so node ids are already topologically sorted.

#include <cstdint>
#include <vector>

#include "slrec/gfq.hpp"
#include "slrec/matfq.hpp"
#include "slrec/mslp.hpp"

namespace slrec {

using NodeId = std::int32_t;

class WordGraph {
public:
    enum class Kind : std::uint8_t { Input, Mul, Inv };
    struct Node {
        Kind kind;
        NodeId a;
        NodeId b;
    };

    NodeId input();
    NodeId mul(NodeId a, NodeId b);
    NodeId inv(NodeId a);
    /// a^e by square-and-multiply; e = 0 gives a * a^{-1}.
    NodeId pow(NodeId a, u128 e);
    NodeId pow_signed(NodeId a, long long e);
    /// Square-and-multiply along a big-endian bit string (leading bit set).
    NodeId pow_bits(NodeId a, const std::vector<bool>& bits_msb_first);
    NodeId identity_like(NodeId a) { return mul(a, inv(a)); }

    std::size_t size() const { return nodes_.size(); }
    const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }

private:
    std::vector<Node> nodes_;
};

/// Compiles the nodes `outputs` into an MSLP whose declared inputs are the
/// nodes `inputs` (in order). The program ends with copies of the outputs
/// into consecutive fresh slots and a single Show of those slots. With
/// `preserve_inputs` the input slots are never overwritten.
Mslp compile_words(const WordGraph& g, const std::vector<NodeId>& inputs, const std::vector<NodeId>& outputs,
                   bool preserve_inputs = false);

/// Slots holding the final Show of a compiled program.
std::vector<int> final_show_slots(const Mslp& prog);

/// A matrix together with a word that evaluates to it.
struct Tracked {
    Matrix m;
    NodeId w = -1;
};

Tracked tmul(WordGraph& g, const Tracked& a, const Tracked& b);
Tracked tinv(WordGraph& g, const Tracked& a);
Tracked tpow(WordGraph& g, const Tracked& a, long long e);
/// b^{-1} a b.
Tracked tconj(WordGraph& g, const Tracked& a, const Tracked& b);

/// Group operations on matrices for MSLP evaluation.
struct MatrixOps {
    using Element = Matrix;
    Matrix mul(const Matrix& a, const Matrix& b) const { return slrec::mul(a, b); }
    Matrix inv(const Matrix& a) const {
        try {
            return inverse(a);
        } catch (const Singular&) {
            throw SingularInverse("inverse of a singular matrix");
        }
    }
    bool eq(const Matrix& a, const Matrix& b) const { return a == b; }
};

/// Evaluates a compiled program on matrices and returns its last Show.
std::vector<Matrix> eval_last_show(const Mslp& prog, const std::vector<Matrix>& init);

}  // namespace slrec
