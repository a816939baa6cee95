#include "kodbundle/plan.hpp"

namespace kodbundle {

PlanPtr deep_copy(const PlanNode& node) {
    return std::visit(
        [&](const auto& n) -> PlanPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, GcdReduceNode>) {
                return make_node(GcdReduceNode{n.d, n.cover_base, n.cover_index_matrix, n.reduced,
                                               deep_copy(*n.child)});
            } else if constexpr (std::is_same_v<T, TorsionTwistNode>) {
                return make_node(TorsionTwistNode{n.target_torsion, n.modulus, n.symbolic,
                                                  deep_copy(*n.child)});
            } else {
                return make_node(T(n));
            }
        },
        node.node);
}

const char* plan_node_kind(const PlanNode& node) {
    return std::visit(
        [](const auto& n) -> const char* {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, GcdReduceNode>) return "GcdReduce";
            else if constexpr (std::is_same_v<T, DeformationCaseNode>) return "DeformationCase";
            else if constexpr (std::is_same_v<T, IrreducibleGenus2Node>) return "IrreducibleGenus2";
            else if constexpr (std::is_same_v<T, DiamondSumNode>) return "DiamondSum";
            else return "TorsionTwist";
        },
        node.node);
}

}  // namespace kodbundle
