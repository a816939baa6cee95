#include "kodbundle/serialize.hpp"

namespace kodbundle {

namespace {

const Json& require(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(path + "." + key + ": missing");
    return j.at(key);
}

Int int_from_json(const Json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw ParseError(path + ": not a decimal integer string");
        }
    }
    if (j.is_number_integer()) return Int(j.get<long long>());
    throw ParseError(path + ": expected integer (decimal string)");
}

Json int_to_json(const Int& v) { return Json(v.str()); }

long small_from_json(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path + ": expected a small integer");
    return j.get<long>();
}

Json mat_to_json(const IntMat2& m) {
    return Json::array({Json::array({int_to_json(m.a), int_to_json(m.b)}),
                        Json::array({int_to_json(m.c), int_to_json(m.d)})});
}

IntMat2 mat_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw ParseError(path + ": expected a 2x2 matrix");
    return {int_from_json(j[0][0], path + "[0][0]"), int_from_json(j[0][1], path + "[0][1]"),
            int_from_json(j[1][0], path + "[1][0]"), int_from_json(j[1][1], path + "[1][1]")};
}

Json isogeny_to_json(const IsogenyData& iso) {
    return Json{{"multiplier", quadint_to_json(iso.multiplier)},
                {"source", curve_to_json(iso.source)},
                {"target", curve_to_json(iso.target)}};
}

IsogenyData isogeny_from_json(const Json& j, long D, const std::string& path) {
    return IsogenyData{quadint_from_json(require(j, "multiplier", path), D, path + ".multiplier"),
                       curve_from_json(require(j, "source", path), D, path + ".source"),
                       curve_from_json(require(j, "target", path), D, path + ".target")};
}

Json torsion_matrix_to_json(const TorsionMatrix& t) {
    return Json{{"modulus", int_to_json(t.r)}, {"entries", mat_to_json(t.m)}};
}

TorsionMatrix torsion_matrix_from_json(const Json& j, const std::string& path) {
    Int r = int_from_json(require(j, "modulus", path), path + ".modulus");
    if (r < 2) throw ParseError(path + ".modulus: must be >= 2");
    return TorsionMatrix(r, mat_from_json(require(j, "entries", path), path + ".entries"));
}

Json node_to_json(const PlanNode& node);

Json node_field(const PlanPtr& child) {
    if (!child) throw std::logic_error("plan serialization: missing child node");
    return node_to_json(*child);
}

Json node_to_json(const PlanNode& node) {
    return std::visit(
        [](const auto& n) -> Json {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, GcdReduceNode>) {
                return Json{{"type", "gcd_reduce"},
                            {"d", int_to_json(n.d)},
                            {"cover_base", curve_to_json(n.cover_base)},
                            {"cover_index_matrix", mat_to_json(n.cover_index_matrix)},
                            {"reduced", instance_to_json(n.reduced)},
                            {"child", node_field(n.child)}};
            } else if constexpr (std::is_same_v<T, DeformationCaseNode>) {
                return Json{{"type", "deformation_case"},
                            {"r", int_to_json(n.r)},
                            {"R", int_to_json(n.Rval)},
                            {"d", int_to_json(n.d)}};
            } else if constexpr (std::is_same_v<T, IrreducibleGenus2Node>) {
                return Json{{"type", "irreducible_genus2"},
                            {"fiber_curve", curve_to_json(n.fiber_curve)},
                            {"delta", isogeny_to_json(n.delta)},
                            {"psi", torsion_matrix_to_json(n.psi)},
                            {"c1hat", isogeny_to_json(n.c1hat)}};
            } else if constexpr (std::is_same_v<T, DiamondSumNode>) {
                return Json{{"type", "diamond_sum"},
                            {"k", int_to_json(n.diamond.k)},
                            {"E1", curve_to_json(n.diamond.E1)},
                            {"E2", curve_to_json(n.diamond.E2)},
                            {"f1", isogeny_to_json(n.diamond.f1)},
                            {"f2", isogeny_to_json(n.diamond.f2)},
                            {"f1p", isogeny_to_json(n.diamond.f1p)},
                            {"f2p", isogeny_to_json(n.diamond.f2p)},
                            {"h", isogeny_to_json(n.diamond.h)},
                            {"cprime", quadint_to_json(n.cprime)},
                            {"cdblprime", quadint_to_json(n.cdblprime)}};
            } else {
                return Json{{"type", "torsion_twist"},
                            {"target_torsion", int_to_json(n.target_torsion)},
                            {"modulus", int_to_json(n.modulus)},
                            {"symbolic", n.symbolic},
                            {"child", node_field(n.child)}};
            }
        },
        node.node);
}

PlanPtr node_from_json(const Json& j, long D, const std::string& path) {
    std::string type = require(j, "type", path).get<std::string>();
    if (type == "gcd_reduce") {
        return make_node(GcdReduceNode{
            int_from_json(require(j, "d", path), path + ".d"),
            curve_from_json(require(j, "cover_base", path), D, path + ".cover_base"),
            mat_from_json(require(j, "cover_index_matrix", path), path + ".cover_index_matrix"),
            instance_from_json(require(j, "reduced", path), false, path + ".reduced"),
            node_from_json(require(j, "child", path), D, path + ".child")});
    } else if (type == "deformation_case") {
        return make_node(DeformationCaseNode{int_from_json(require(j, "r", path), path + ".r"),
                                             int_from_json(require(j, "R", path), path + ".R"),
                                             int_from_json(require(j, "d", path), path + ".d")});
    } else if (type == "irreducible_genus2") {
        return make_node(IrreducibleGenus2Node{
            curve_from_json(require(j, "fiber_curve", path), D, path + ".fiber_curve"),
            isogeny_from_json(require(j, "delta", path), D, path + ".delta"),
            torsion_matrix_from_json(require(j, "psi", path), path + ".psi"),
            isogeny_from_json(require(j, "c1hat", path), D, path + ".c1hat")});
    } else if (type == "diamond_sum") {
        DiamondConfigData dia{
            int_from_json(require(j, "k", path), path + ".k"),
            curve_from_json(require(j, "E1", path), D, path + ".E1"),
            curve_from_json(require(j, "E2", path), D, path + ".E2"),
            isogeny_from_json(require(j, "f1", path), D, path + ".f1"),
            isogeny_from_json(require(j, "f2", path), D, path + ".f2"),
            isogeny_from_json(require(j, "f1p", path), D, path + ".f1p"),
            isogeny_from_json(require(j, "f2p", path), D, path + ".f2p"),
            isogeny_from_json(require(j, "h", path), D, path + ".h")};
        return make_node(DiamondSumNode{
            std::move(dia), quadint_from_json(require(j, "cprime", path), D, path + ".cprime"),
            quadint_from_json(require(j, "cdblprime", path), D, path + ".cdblprime")});
    } else if (type == "torsion_twist") {
        return make_node(TorsionTwistNode{
            int_from_json(require(j, "target_torsion", path), path + ".target_torsion"),
            int_from_json(require(j, "modulus", path), path + ".modulus"),
            require(j, "symbolic", path).is_boolean() && j.at("symbolic").get<bool>(),
            node_from_json(require(j, "child", path), D, path + ".child")});
    } else {
        throw ParseError(path + ".type: unknown plan node type '" + type + "'");
    }
}

}  // namespace

Json rational_to_json(const Rational& q) {
    return Json{{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

Rational rational_from_json(const Json& j, const std::string& path) {
    Int num = int_from_json(require(j, "num", path), path + ".num");
    Int den = int_from_json(require(j, "den", path), path + ".den");
    if (den <= 0) throw ParseError(path + ".den: denominator must be positive");
    return make_rational(num, den);
}

Json quadint_to_json(const QuadInt& q) {
    return Json::array({rational_to_json(q.a()), rational_to_json(q.b())});
}

QuadInt quadint_from_json(const Json& j, long D, const std::string& path) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(path + ": expected [a, b] with rational entries");
    return QuadInt(rational_from_json(j[0], path + "[0]"), rational_from_json(j[1], path + "[1]"),
                   D);
}

Json lattice_to_json(const Lattice2& L) {
    return Json::array({quadint_to_json(L.omega1()), quadint_to_json(L.omega2())});
}

Lattice2 lattice_from_json(const Json& j, long D, const std::string& path) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(path + ": expected a basis pair");
    QuadInt w1 = quadint_from_json(j[0], D, path + "[0]");
    QuadInt w2 = quadint_from_json(j[1], D, path + "[1]");
    try {
        return Lattice2(w1, w2);
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Json curve_to_json(const CurveModel& c) {
    return Json{{"basis", lattice_to_json(c.lattice)}, {"label", c.label}};
}

CurveModel curve_from_json(const Json& j, long D, const std::string& path) {
    std::string label;
    if (j.is_object() && j.contains("label")) label = j.at("label").get<std::string>();
    return CurveModel{lattice_from_json(require(j, "basis", path), D, path + ".basis"), label};
}

Json instance_to_json(const ChernInstance& inst) {
    return Json{{"schema_version", 1},
                {"D", inst.surface.base.lattice.D()},
                {"surface",
                 Json{{"base", curve_to_json(inst.surface.base)},
                      {"fiber", curve_to_json(inst.surface.fiber)},
                      {"torsion_order", int_to_json(inst.surface.torsion_order)}}},
                {"r", int_to_json(inst.r)},
                {"c1",
                 Json{{"free", quadint_to_json(inst.c1.free)},
                      {"torsion", int_to_json(inst.c1.torsion)}}},
                {"c2", int_to_json(inst.c2)}};
}

ChernInstance instance_from_json(const Json& j, bool strict, const std::string& path) {
    long D = small_from_json(require(j, "D", path), path + ".D");
    if (!is_squarefree(D)) throw ParseError(path + ".D: must be positive and squarefree");
    const Json& sj = require(j, "surface", path);
    KodairaSurface surface{
        curve_from_json(require(sj, "base", path + ".surface"), D, path + ".surface.base"),
        curve_from_json(require(sj, "fiber", path + ".surface"), D, path + ".surface.fiber"),
        int_from_json(require(sj, "torsion_order", path + ".surface"),
                      path + ".surface.torsion_order")};
    const Json& cj = require(j, "c1", path);
    NSClass c1{quadint_from_json(require(cj, "free", path + ".c1"), D, path + ".c1.free"),
               int_from_json(require(cj, "torsion", path + ".c1"), path + ".c1.torsion")};
    ChernInstance inst{surface, int_from_json(require(j, "r", path), path + ".r"), c1,
                       int_from_json(require(j, "c2", path), path + ".c2")};
    if (strict) {
        try {
            validate_instance(inst);
        } catch (const std::exception& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    return inst;
}

Json plan_to_json(const ConstructionPlan& plan, const ChernInstance& inst) {
    return Json{{"schema_version", 1},
                {"instance", instance_to_json(inst)},
                {"root", node_to_json(*plan.root)}};
}

std::pair<ConstructionPlan, ChernInstance> plan_from_json(const Json& j) {
    const std::string path = "$";
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer() ||
        j.at("schema_version").get<long>() != 1)
        throw ParseError("$.schema_version: expected 1");
    ChernInstance inst = instance_from_json(require(j, "instance", path), false, "$.instance");
    long D = inst.surface.base.lattice.D();
    ConstructionPlan plan{node_from_json(require(j, "root", path), D, "$.root")};
    return {std::move(plan), std::move(inst)};
}

Json report_to_json(const VerificationReport& rep) {
    Json checks = Json::array();
    for (const auto& c : rep.checks)
        checks.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"lhs", c.lhs}, {"rhs", c.rhs}});
    return Json{{"overall", rep.overall()}, {"checks", checks}};
}

std::string dump_deterministic(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace kodbundle
