#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cramer/errors.hpp"
#include "cramer/point.hpp"
#include "cramer/rational.hpp"

namespace cramer {

/// Whether the equations carry the scalar omega alongside M and N.
enum class OmegaMode { with_omega, omega_less };

inline std::string to_string(OmegaMode mode) {
    return mode == OmegaMode::with_omega ? "with-omega" : "omega-less";
}

enum class VarKind {
    m_entry,     ///< entry (i, j) of the r-by-t matrix M
    n_entry,     ///< entry (i, j) of the t-by-s matrix N
    omega,       ///< the scalar omega
    deformation, ///< the one-parameter deformation variable
    named        ///< free-form variable (spinor coordinates)
};

/// One variable of a polynomial ring: what it denotes plus its print name.
struct VarDescriptor {
    VarKind kind = VarKind::named;
    int i = 0; ///< 1-based row index for m/n entries
    int j = 0; ///< 1-based column index for m/n entries
    std::string name;

    friend bool operator==(const VarDescriptor& a, const VarDescriptor& b) {
        return a.kind == b.kind && a.i == b.i && a.j == b.j && a.name == b.name;
    }
};

/// Ordered, immutable list of variables. The order is fixed at
/// construction and defines both the exponent-vector layout of every
/// polynomial over the table and the canonical printing order.
class VariableTable {
public:
    explicit VariableTable(std::vector<VarDescriptor> vars) : vars_(std::move(vars)) {
        for (std::size_t a = 0; a < vars_.size(); ++a)
            for (std::size_t b = a + 1; b < vars_.size(); ++b)
                if (vars_[a] == vars_[b])
                    throw ParameterError("VariableTable: duplicate descriptor '" + vars_[a].name + "'");
    }

    std::size_t size() const { return vars_.size(); }
    const VarDescriptor& var(std::size_t k) const { return vars_.at(k); }
    const std::string& name(std::size_t k) const { return vars_.at(k).name; }
    const std::vector<VarDescriptor>& vars() const { return vars_; }

    /// Index lookup by descriptor identity; throws if absent.
    std::size_t index_of(VarKind kind, int i = 0, int j = 0) const {
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            const auto& v = vars_[k];
            if (v.kind == kind && v.i == i && v.j == j) return k;
        }
        throw TableMismatchError("VariableTable: no such variable");
    }

    std::size_t index_of_name(const std::string& name) const {
        for (std::size_t k = 0; k < vars_.size(); ++k)
            if (vars_[k].name == name) return k;
        throw TableMismatchError("VariableTable: no variable named '" + name + "'");
    }

    bool has(VarKind kind, int i = 0, int j = 0) const {
        for (const auto& v : vars_)
            if (v.kind == kind && v.i == i && v.j == j) return true;
        return false;
    }

    friend bool operator==(const VariableTable& a, const VariableTable& b) {
        return a.vars_ == b.vars_;
    }

private:
    std::vector<VarDescriptor> vars_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

inline bool same_table(const TablePtr& a, const TablePtr& b) {
    return a == b || (a && b && *a == *b);
}

/// The coordinate ring of the ambient space: m entries row-major, then n
/// entries row-major, then omega (in with-omega mode), then optionally the
/// deformation variable.
inline TablePtr ambient_table(int r, int s, OmegaMode mode, bool with_deformation = false) {
    if (r < 1 || r > s) throw ParameterError("ambient_table: need 1 <= r <= s");
    const int t = r + s;
    std::vector<VarDescriptor> vars;
    vars.reserve(static_cast<std::size_t>(r * t + t * s) + 2);
    auto subscript = [](int i, int j) { return std::to_string(i) + std::to_string(j); };
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= t; ++j)
            vars.push_back({VarKind::m_entry, i, j, "m" + subscript(i, j)});
    for (int i = 1; i <= t; ++i)
        for (int j = 1; j <= s; ++j)
            vars.push_back({VarKind::n_entry, i, j, "n" + subscript(i, j)});
    if (mode == OmegaMode::with_omega) vars.push_back({VarKind::omega, 0, 0, "w"});
    if (with_deformation) vars.push_back({VarKind::deformation, 0, 0, "t"});
    return std::make_shared<VariableTable>(std::move(vars));
}

/// Values of every table variable at a configuration point, in table order.
/// The deformation variable, if present, evaluates to the supplied value.
inline std::vector<Rational> ambient_values(const VariableTable& table,
                                            const ConfigurationPoint& p,
                                            const Rational& deformation_value = Rational(0)) {
    std::vector<Rational> values;
    values.reserve(table.size());
    for (std::size_t k = 0; k < table.size(); ++k) {
        const auto& v = table.var(k);
        switch (v.kind) {
        case VarKind::m_entry:
            if (v.i < 1 || static_cast<std::size_t>(v.i) > p.r() ||
                v.j < 1 || static_cast<std::size_t>(v.j) > p.t())
                throw DimensionError("ambient_values: point does not match table shape");
            values.push_back(p.M.at(v.i - 1, v.j - 1));
            break;
        case VarKind::n_entry:
            if (v.i < 1 || static_cast<std::size_t>(v.i) > p.t() ||
                v.j < 1 || static_cast<std::size_t>(v.j) > p.s())
                throw DimensionError("ambient_values: point does not match table shape");
            values.push_back(p.N.at(v.i - 1, v.j - 1));
            break;
        case VarKind::omega:
            if (!p.omega) throw DimensionError("ambient_values: point has no omega");
            values.push_back(*p.omega);
            break;
        case VarKind::deformation:
            values.push_back(deformation_value);
            break;
        case VarKind::named:
            throw TableMismatchError("ambient_values: table is not an ambient table");
        }
    }
    return values;
}

} // namespace cramer
