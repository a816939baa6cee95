#pragma once

#include <memory>
#include <variant>

#include "kodbundle/kodaira.hpp"

namespace kodbundle {

struct PlanNode;
using PlanPtr = std::unique_ptr<PlanNode>;

// Reduction node: pass to an unramified degree-d covering of the base.
struct GcdReduceNode {
    Int d;
    CurveModel cover_base;       // B'
    IntMat2 cover_index_matrix;  // coordinates of B' basis in B basis (columns)
    ChernInstance reduced;       // instance on the surface over B'
    PlanPtr child;
};

// Terminal node for the d = r case, which is handled by a deformation
// construction outside this tool; carries the invariants only.
struct DeformationCaseNode {
    Int r;
    Int Rval;
    Int d;
};

// Irreducible branch: the anti-isometry admits no diamond splitting and
// the construction goes through a genus-2 covering.
struct IrreducibleGenus2Node {
    CurveModel fiber_curve;  // F
    IsogenyData delta;       // F -> E, cyclic of degree R
    TorsionMatrix psi;       // B[r] -> F[r], anti-isometry
    IsogenyData c1hat;       // B -> E, the class c with c∘f^* = c1hat, c∘g^* = delta
};

// Reducible branch: diamond configuration with summand classes.
struct DiamondConfigData {
    Int k;  // 1 <= k < r
    CurveModel E1, E2;
    IsogenyData f1, f2;    // B -> E1 (deg r-k), B -> E2 (deg k)
    IsogenyData f1p, f2p;  // E1 -> F (deg k), E2 -> F (deg r-k)
    IsogenyData h;         // B -> F, h = f1p∘f1 = f2p∘f2, deg k(r-k)
};

struct DiamondSumNode {
    DiamondConfigData diamond;
    QuadInt cprime;     // E1 -> E multiplier (0 for a torsion-only summand class)
    QuadInt cdblprime;  // E2 -> E multiplier
};

// Final wrapper: twist by m fiber classes, m ≡ target - t0 (mod n) with t0
// the torsion offset of the planned bundle (not computable in this model,
// hence symbolic).
struct TorsionTwistNode {
    Int target_torsion;
    Int modulus;
    bool symbolic;
    PlanPtr child;
};

struct PlanNode {
    std::variant<GcdReduceNode, DeformationCaseNode, IrreducibleGenus2Node, DiamondSumNode,
                 TorsionTwistNode>
        node;
};

template <class N>
PlanPtr make_node(N&& n) {
    return std::make_unique<PlanNode>(PlanNode{std::forward<N>(n)});
}

struct ConstructionPlan {
    PlanPtr root;
};

PlanPtr deep_copy(const PlanNode& node);
inline ConstructionPlan deep_copy(const ConstructionPlan& plan) {
    return ConstructionPlan{deep_copy(*plan.root)};
}

const char* plan_node_kind(const PlanNode& node);

}  // namespace kodbundle
