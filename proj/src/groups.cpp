#include "crdtlab/groups.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace crdtlab {

namespace {

// Shortest representative word per state, exploring ops in the given order.
std::vector<std::vector<OpIndex>> bfs_words(const FiniteCrdtSpec &spec, const std::vector<OpIndex> &op_order) {
    std::vector<std::optional<std::vector<OpIndex>>> words(spec.state_count());
    words[spec.initial()] = std::vector<OpIndex>{};
    std::deque<StateIndex> queue{spec.initial()};
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (auto p : op_order) {
            auto t = spec.step(s, p);
            if (!t || words[*t]) continue;
            auto w = *words[s];
            w.push_back(p);
            words[*t] = std::move(w);
            queue.push_back(*t);
        }
    }
    std::vector<std::vector<OpIndex>> out;
    for (StateIndex s = 0; s < spec.state_count(); ++s) {
        if (!words[s]) throw GroupError("state '" + spec.state_name(s) + "' is unreachable from the initial state");
        out.push_back(std::move(*words[s]));
    }
    return out;
}

std::string axiom_refusal(const FiniteCrdtSpec &spec, const AxiomReport &axioms) {
    if (axioms.commutativity) return "not a CRDT: " + describe(spec, *axioms.commutativity);
    return "not undoable: " + describe(spec, axioms.undoability.front());
}

Integer mod_positive(const Integer &x, const Integer &d) {
    Integer r = x % d;
    if (r < 0) r += d;
    return r;
}

std::string integer_list(const std::vector<Integer> &v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
    return out + "]";
}

} // namespace

std::size_t ActionGroup::element_order(StateIndex x) const {
    std::size_t k = 1;
    for (auto y = x; y != identity; y = table[y][x]) ++k;
    return k;
}

ActionGroup build_action_group(const FiniteCrdtSpec &spec) {
    auto validation = validate_spec(spec);
    if (!validation.ok()) throw GroupError("invalid spec: " + validation.errors.front().message);
    auto axioms = check_axioms(spec);
    if (!axioms.passed()) throw GroupError(axiom_refusal(spec, axioms));

    ActionGroup g{spec};
    g.identity = spec.initial();
    const auto n = spec.state_count();

    std::vector<OpIndex> forward(spec.op_count()), backward;
    for (OpIndex p = 0; p < spec.op_count(); ++p) forward[p] = p;
    backward.assign(forward.rbegin(), forward.rend());
    g.representative = bfs_words(spec, forward);
    auto alternative = bfs_words(spec, backward);

    g.table.assign(n, std::vector<StateIndex>(n, 0));
    for (StateIndex x = 0; x < n; ++x) {
        for (StateIndex y = 0; y < n; ++y) {
            auto r = spec.run(x, g.representative[y]);
            auto r2 = spec.run(x, alternative[y]);
            if (!r.ok() || !r2.ok() || r.value() != r2.value())
                throw std::logic_error("product of '" + spec.state_name(x) + "' and '" + spec.state_name(y) +
                                       "' depends on the chosen representative");
            g.table[x][y] = r.value();
        }
    }
    g.inverse.assign(n, n);
    for (StateIndex x = 0; x < n; ++x) {
        for (StateIndex y = 0; y < n; ++y) {
            if (g.table[x][y] == g.identity) {
                g.inverse[x] = y;
                break;
            }
        }
    }
    for (OpIndex p = 0; p < spec.op_count(); ++p) g.generator.push_back(spec.step(g.identity, p));

    if (auto broken = verify_group_laws(g)) throw std::logic_error("group law violated: " + *broken);
    return g;
}

std::optional<std::string> verify_group_laws(const ActionGroup &g) {
    const auto n = g.order();
    const auto &name = [&](StateIndex s) { return "'" + g.spec.state_name(s) + "'"; };
    for (StateIndex x = 0; x < n; ++x) {
        if (g.table[x].size() != n) return "table row " + name(x) + " has the wrong length";
        if (g.table[g.identity][x] != x || g.table[x][g.identity] != x) return "identity fails at " + name(x);
        if (g.inverse[x] >= n || g.table[x][g.inverse[x]] != g.identity) return "no inverse for " + name(x);
        for (StateIndex y = 0; y < n; ++y) {
            if (g.table[x][y] >= n) return "table not closed";
            if (g.table[x][y] != g.table[y][x]) return "not abelian at " + name(x) + ", " + name(y);
            for (StateIndex z = 0; z < n; ++z) {
                if (g.table[g.table[x][y]][z] != g.table[x][g.table[y][z]])
                    return "not associative at " + name(x) + ", " + name(y) + ", " + name(z);
            }
        }
    }
    return std::nullopt;
}

Presentation extract_presentation(const ActionGroup &g) {
    const auto &spec = g.spec;
    Presentation p;
    std::vector<std::optional<std::size_t>> column(spec.op_count());
    for (OpIndex op = 0; op < spec.op_count(); ++op) {
        if (!g.generator[op]) continue;
        column[op] = p.generators.size();
        p.generators.push_back(spec.op_name(op));
    }
    const auto k = p.generators.size();
    p.inverse_of.assign(k, std::nullopt);

    auto word = [&](StateIndex s) {
        std::vector<Integer> w(k);
        for (auto op : g.representative[s]) w[*column[op]] += 1;
        return w;
    };
    std::vector<std::vector<Integer>> rows;
    for (StateIndex s = 0; s < spec.state_count(); ++s) {
        auto ws = word(s);
        for (OpIndex op = 0; op < spec.op_count(); ++op) {
            auto t = spec.step(s, op);
            if (!t || !column[op]) continue;
            auto row = ws;
            row[*column[op]] += 1;
            auto wt = word(*t);
            bool zero = true;
            for (std::size_t c = 0; c < k; ++c) {
                row[c] -= wt[c];
                zero = zero && row[c] == 0;
            }
            if (!zero) rows.push_back(std::move(row));
        }
    }
    p.relations = IntMatrix::from_rows(rows, k);

    auto d = decompose(p);
    if (!d.finite() || d.torsion_order() != g.order())
        throw std::logic_error("extracted presentation has quotient " + d.group_text() + ", expected order " +
                               std::to_string(g.order()));
    return p;
}

Presentation symbolic_presentation(const CrdtKind &kind) {
    Presentation p;
    std::vector<std::vector<Integer>> rows;
    auto pair = [&](const std::string &up, const std::string &down) {
        auto i = p.generators.size();
        p.generators.push_back(up);
        p.generators.push_back(down);
        p.inverse_of.push_back(i + 1);
        p.inverse_of.push_back(i);
        return i;
    };
    std::vector<std::pair<std::size_t, long long>> cycles; // (first generator, modulus or 0)
    switch (kind.kind) {
    case Kind::Counter: cycles.emplace_back(pair("inc", "dec"), 0); break;
    case Kind::ModCounter: cycles.emplace_back(pair("inc", "dec"), kind.modulus); break;
    case Kind::PNSet:
        if (kind.universe.empty()) throw GroupError("PN-Set presentation needs a finite universe");
        for (const auto &e : kind.universe) cycles.emplace_back(pair("add " + e, "remove " + e), 0);
        break;
    case Kind::TSet: {
        if (kind.universe.empty()) throw GroupError("T-Set presentation needs a finite universe");
        for (const auto &e : kind.universe) {
            auto i = p.generators.size();
            p.generators.push_back("toggle " + e);
            p.inverse_of.push_back(i);
            std::vector<Integer> row(i + 1);
            row[i] = 2;
            rows.push_back(std::move(row));
        }
        break;
    }
    case Kind::GSet:
    case Kind::ORSet: throw GroupError(kind.describe() + " is not undoable and has no group of actions");
    case Kind::Tuple: {
        std::vector<Presentation> parts;
        for (const auto &c : kind.components) parts.push_back(symbolic_presentation(c));
        std::size_t offset = 0;
        for (std::size_t c = 0; c < parts.size(); ++c) {
            for (std::size_t g = 0; g < parts[c].generators.size(); ++g) {
                p.generators.push_back(std::to_string(c) + ":" + parts[c].generators[g]);
                auto inv = parts[c].inverse_of[g];
                p.inverse_of.push_back(inv ? std::optional<std::size_t>(*inv + offset) : std::nullopt);
            }
            for (std::size_t r = 0; r < parts[c].relations.rows(); ++r) {
                std::vector<Integer> row(offset);
                auto inner = parts[c].relations.row(r);
                row.insert(row.end(), inner.begin(), inner.end());
                rows.push_back(std::move(row));
            }
            offset += parts[c].generators.size();
        }
        break;
    }
    }
    for (auto [first, modulus] : cycles) {
        // inc + dec = 0, and n·inc = 0 for a modulo-n counter
        std::vector<Integer> row(first + 2);
        row[first] = 1;
        row[first + 1] = 1;
        rows.push_back(row);
        if (modulus) {
            std::vector<Integer> wrap(first + 1);
            wrap[first] = modulus;
            rows.push_back(std::move(wrap));
        }
    }
    for (auto &row : rows) row.resize(p.generators.size());
    p.relations = IntMatrix::from_rows(rows, p.generators.size());
    return p;
}

Integer CyclicDecomposition::torsion_order() const {
    Integer out = 1;
    for (const auto &d : torsion) out *= d;
    return out;
}

std::string CyclicDecomposition::group_text() const {
    std::string out;
    for (const auto &d : torsion) out += (out.empty() ? "" : " × ") + std::string("ℤ_") + d.str();
    for (std::size_t i = 0; i < free_rank; ++i) out += (out.empty() ? "" : " × ") + std::string("ℤ");
    return out.empty() ? "0" : out;
}

std::string CyclicDecomposition::tuple_text() const {
    std::string out;
    for (const auto &d : torsion) out += (out.empty() ? "" : " × ") + std::string("ModCounter(") + d.str() + ")";
    for (std::size_t i = 0; i < free_rank; ++i) out += (out.empty() ? "" : " × ") + std::string("Counter");
    return out.empty() ? "Tuple()" : out;
}

std::vector<Integer> Decomposed::coordinates(const std::vector<Integer> &word) const {
    const auto &V = snf.V;
    auto column_value = [&](std::size_t j) {
        Integer c = 0;
        for (std::size_t i = 0; i < word.size(); ++i) c += word[i] * V(i, j);
        return c;
    };
    std::vector<Integer> out;
    for (std::size_t t = 0; t < torsion_columns.size(); ++t)
        out.push_back(mod_positive(column_value(torsion_columns[t]), decomposition.torsion[t]));
    for (auto j : free_columns) out.push_back(column_value(j));
    return out;
}

Decomposed decompose_with_basis(const Presentation &p) {
    if (p.relations.cols() != p.generators.size())
        throw InputError("presentation has " + std::to_string(p.generators.size()) + " generators but relation rows of length " +
                         std::to_string(p.relations.cols()));
    Decomposed out{{}, smith_normal_form(p.relations), {}, {}};
    auto d = out.snf.diagonal();
    for (std::size_t j = 0; j < p.generators.size(); ++j) {
        if (j >= d.size() || d[j] == 0) {
            out.free_columns.push_back(j);
        } else if (d[j] > 1) {
            out.torsion_columns.push_back(j);
            out.decomposition.torsion.push_back(d[j]);
        }
    }
    out.decomposition.free_rank = out.free_columns.size();
    return out;
}

CyclicDecomposition decompose(const Presentation &p) { return decompose_with_basis(p).decomposition; }

CounterTuple counters_for(const CyclicDecomposition &d) {
    CounterTuple out{d, d.tuple_text(), std::nullopt};
    if (!d.finite()) return out;

    std::vector<long long> moduli;
    for (const auto &t : d.torsion) moduli.push_back(static_cast<long long>(t));
    if (moduli.size() == 1) {
        out.spec = to_finite_spec(CrdtKind::mod_counter(moduli[0]));
        return out;
    }

    auto name_of = [](const std::vector<long long> &v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    };
    std::vector<OpName> ops;
    for (std::size_t k = 0; k < moduli.size(); ++k) {
        ops.push_back("inc" + std::to_string(k + 1));
        ops.push_back("dec" + std::to_string(k + 1));
    }
    // states in mixed-radix order, last component fastest
    std::vector<std::vector<long long>> states{std::vector<long long>(moduli.size(), 0)};
    for (std::size_t k = moduli.size(); k-- > 0;) {
        std::vector<std::vector<long long>> next;
        for (long long v = 0; v < moduli[k]; ++v) {
            for (auto s : states) {
                s[k] = v;
                next.push_back(std::move(s));
            }
        }
        states = std::move(next);
    }
    std::sort(states.begin(), states.end());
    std::vector<StateId> names;
    std::vector<Transition> transitions;
    for (const auto &s : states) {
        names.push_back(name_of(s));
        for (std::size_t k = 0; k < moduli.size(); ++k) {
            auto up = s, down = s;
            up[k] = (s[k] + 1) % moduli[k];
            down[k] = (s[k] + moduli[k] - 1) % moduli[k];
            transitions.push_back({names.back(), ops[2 * k], name_of(up)});
            transitions.push_back({names.back(), ops[2 * k + 1], name_of(down)});
        }
    }
    auto initial = names.front();
    out.spec = FiniteCrdtSpec(std::move(names), std::move(initial), std::move(ops), transitions);
    return out;
}

std::optional<std::string> verify_equivalence(const FiniteCrdtSpec &source, const FiniteCrdtSpec &target,
                                              const EquivalenceWitness &w) {
    const auto n = source.state_count();
    if (target.state_count() != n) return "state counts differ";
    std::vector<std::optional<StateIndex>> phi(n), phi_inv(n);
    for (const auto &[s, t] : w.phi) {
        auto si = source.find_state(s);
        auto ti = target.find_state(t);
        if (!si || !ti) return "φ mentions unknown state '" + (si ? t : s) + "'";
        if (phi[*si]) return "φ maps '" + s + "' twice";
        if (phi_inv[*ti]) return "φ is not injective at '" + t + "'";
        phi[*si] = *ti;
        phi_inv[*ti] = *si;
    }
    for (StateIndex s = 0; s < n; ++s) {
        if (!phi[s]) return "φ is undefined at '" + source.state_name(s) + "'";
    }
    if (*phi[source.initial()] != target.initial()) return "φ(s0) is not the target's initial state";

    auto lookup = [](const std::vector<std::pair<OpName, Action>> &m, const OpName &op) -> const Action * {
        for (const auto &[k, v] : m) {
            if (k == op) return &v;
        }
        return nullptr;
    };
    for (OpIndex p = 0; p < source.op_count(); ++p) {
        const auto *image = lookup(w.psi, source.op_name(p));
        if (!image) return "ψ is undefined for '" + source.op_name(p) + "'";
        auto translated = target.indices(*image);
        for (StateIndex s = 0; s < n; ++s) {
            auto sp = source.step(s, p);
            if (!sp) continue;
            auto r = target.run(*phi[s], translated);
            if (!r.ok() || r.value() != *phi[*sp])
                return "φ(s)·ψ(p) ≠ φ(s·p) at s='" + source.state_name(s) + "', p='" + source.op_name(p) + "'";
        }
    }
    for (OpIndex q = 0; q < target.op_count(); ++q) {
        const auto *image = lookup(w.psi_prime, target.op_name(q));
        if (!image) return "ψ' is undefined for '" + target.op_name(q) + "'";
        auto translated = source.indices(*image);
        for (StateIndex t = 0; t < n; ++t) {
            auto tq = target.step(t, q);
            if (!tq) continue;
            auto r = source.run(*phi_inv[t], translated);
            if (!r.ok() || r.value() != *phi_inv[*tq])
                return "φ⁻¹(s')·ψ'(p') ≠ φ⁻¹(s'·p') at s'='" + target.state_name(t) + "', p'='" +
                       target.op_name(q) + "'";
        }
    }
    return std::nullopt;
}

NotIsomorphic::NotIsomorphic(CyclicDecomposition a, CyclicDecomposition b)
    : std::runtime_error("not isomorphic: " + a.group_text() + " vs " + b.group_text()), source(std::move(a)),
      target(std::move(b)) {}

namespace {

struct CoordinateMap {
    ActionGroup group;
    Decomposed basis;
    std::vector<std::vector<Integer>> coords; // per state
};

CoordinateMap coordinate_map(const FiniteCrdtSpec &spec) {
    auto group = build_action_group(spec);
    auto presentation = extract_presentation(group);
    auto basis = decompose_with_basis(presentation);
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < presentation.generators.size(); ++i) column[presentation.generators[i]] = i;
    std::vector<std::vector<Integer>> coords;
    for (StateIndex s = 0; s < spec.state_count(); ++s) {
        std::vector<Integer> w(presentation.generators.size());
        for (auto op : group.representative[s]) w[column.at(spec.op_name(op))] += 1;
        coords.push_back(basis.coordinates(w));
    }
    return {std::move(group), std::move(basis), std::move(coords)};
}

} // namespace

EquivalenceWitness synthesize_equivalence(const FiniteCrdtSpec &source, const FiniteCrdtSpec &target) {
    auto a = coordinate_map(source);
    auto b = coordinate_map(target);
    if (a.basis.decomposition != b.basis.decomposition)
        throw NotIsomorphic(a.basis.decomposition, b.basis.decomposition);

    std::map<std::vector<Integer>, StateIndex> target_by_coords;
    for (StateIndex t = 0; t < target.state_count(); ++t) target_by_coords[b.coords[t]] = t;

    std::vector<StateIndex> phi(source.state_count()), phi_inv(target.state_count());
    for (StateIndex s = 0; s < source.state_count(); ++s) {
        phi[s] = target_by_coords.at(a.coords[s]);
        phi_inv[phi[s]] = s;
    }

    EquivalenceWitness w;
    for (StateIndex s = 0; s < source.state_count(); ++s)
        w.phi.emplace_back(source.state_name(s), target.state_name(phi[s]));
    // Representatives are shortest and lexicographically smallest, and a group
    // element acts the same from every state, so ψ(p) is the representative of φ(s0·p).
    for (OpIndex p = 0; p < source.op_count(); ++p) {
        auto g = a.group.generator[p];
        w.psi.emplace_back(source.op_name(p), g ? target.action(b.group.representative[phi[*g]]) : Action{});
    }
    for (OpIndex q = 0; q < target.op_count(); ++q) {
        auto g = b.group.generator[q];
        w.psi_prime.emplace_back(target.op_name(q),
                                 g ? source.action(a.group.representative[phi_inv[*g]]) : Action{});
    }
    if (auto failure = verify_equivalence(source, target, w))
        throw std::logic_error("synthesized equivalence witness failed verification: " + *failure);
    return w;
}

BoundedWitnessCheck verify_symbolic_witness(const CrdtKind &kind, std::size_t ball) {
    BoundedWitnessCheck check;
    check.ball = ball;
    auto presentation = symbolic_presentation(kind);
    auto basis = decompose_with_basis(presentation);
    const auto &d = basis.decomposition;
    const auto gens = presentation.generators.size();
    const auto factors = d.torsion.size() + d.free_rank;

    std::vector<SourceOp> gen_ops;
    for (const auto &g : presentation.generators) gen_ops.push_back(SourceOp::parse(g));

    // target group arithmetic on coordinate vectors
    auto add = [&](std::vector<Integer> x, const std::vector<Integer> &y) {
        for (std::size_t k = 0; k < factors; ++k) {
            x[k] += y[k];
            if (k < d.torsion.size()) x[k] = mod_positive(x[k], d.torsion[k]);
        }
        return x;
    };
    auto unit = [&](std::size_t k, int sign) {
        std::vector<Integer> e(factors);
        e[k] = k < d.torsion.size() ? mod_positive(Integer(sign), d.torsion[k]) : Integer(sign);
        return e;
    };
    auto counter_action = [&](const std::vector<Integer> &c) {
        std::string out;
        for (std::size_t k = 0; k < factors; ++k) {
            auto n = abs(c[k]);
            auto op = (c[k] < 0 ? "dec" : "inc") + std::to_string(k + 1);
            for (Integer i = 0; i < n; ++i) out += (out.empty() ? "" : ",") + op;
        }
        return out.empty() ? std::string("ε") : out;
    };

    std::vector<std::vector<Integer>> psi;
    for (std::size_t g = 0; g < gens; ++g) {
        std::vector<Integer> w(gens);
        w[g] = 1;
        psi.push_back(basis.coordinates(w));
        check.psi.emplace_back(presentation.generators[g], counter_action(psi.back()));
    }

    // ψ'(inc_k) is the word e_k·V⁻¹; negative coefficients use the inverse generator.
    std::vector<std::vector<std::size_t>> psi_prime; // per target op (inc1, dec1, inc2, ...), generator sequence
    std::vector<std::size_t> factor_column = basis.torsion_columns;
    factor_column.insert(factor_column.end(), basis.free_columns.begin(), basis.free_columns.end());
    for (std::size_t k = 0; k < factors; ++k) {
        for (int sign : {1, -1}) {
            std::vector<std::size_t> seq;
            for (std::size_t g = 0; g < gens; ++g) {
                Integer coeff = sign * basis.snf.V_inverse(factor_column[k], g);
                auto use = g;
                if (coeff < 0) {
                    if (!presentation.inverse_of[g]) {
                        check.failure = "generator '" + presentation.generators[g] + "' has no declared inverse";
                        return check;
                    }
                    use = *presentation.inverse_of[g];
                    coeff = -coeff;
                }
                for (Integer i = 0; i < coeff; ++i) seq.push_back(use);
            }
            std::string text;
            for (auto g : seq) text += (text.empty() ? "" : ",") + presentation.generators[g];
            check.psi_prime.emplace_back((sign > 0 ? "inc" : "dec") + std::to_string(k + 1),
                                         text.empty() ? std::string("ε") : text);
            psi_prime.push_back(std::move(seq));
        }
    }
    std::size_t longest = 1;
    for (const auto &seq : psi_prime) longest = std::max(longest, seq.size());

    // BFS over native states; φ(s) is the coordinate vector of s's BFS word.
    const auto radius = ball + longest;
    std::map<std::string, std::size_t> index;
    std::vector<CrdtState> states{initial_state(kind)};
    std::vector<std::vector<Integer>> phi{std::vector<Integer>(factors)};
    std::vector<std::size_t> depth{0};
    index[state_to_string(kind, states[0])] = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (depth[i] >= radius) continue;
        for (std::size_t g = 0; g < gens; ++g) {
            auto next = effect(kind, states[i], prepare(kind, states[i], gen_ops[g]));
            auto key = state_to_string(kind, next);
            if (index.count(key)) continue;
            index[key] = states.size();
            states.push_back(std::move(next));
            phi.push_back(add(phi[i], psi[g]));
            depth.push_back(depth[i] + 1);
        }
    }

    std::map<std::vector<Integer>, std::size_t> seen_coords;
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto [it, fresh] = seen_coords.emplace(phi[i], i);
        if (!fresh) {
            check.failure = "φ is not injective: '" + state_to_string(kind, states[it->second]) + "' and '" +
                            state_to_string(kind, states[i]) + "' map to the same counters";
            return check;
        }
    }
    auto phi_of = [&](const CrdtState &s) -> const std::vector<Integer> * {
        auto it = index.find(state_to_string(kind, s));
        return it == index.end() ? nullptr : &phi[it->second];
    };

    for (std::size_t i = 0; i < states.size(); ++i) {
        if (depth[i] > ball) continue;
        ++check.states_checked;
        for (std::size_t g = 0; g < gens; ++g) {
            auto next = effect(kind, states[i], prepare(kind, states[i], gen_ops[g]));
            const auto *image = phi_of(next);
            ++check.transitions_checked;
            if (!image || *image != add(phi[i], psi[g])) {
                check.failure = "φ(s)·ψ(p) ≠ φ(s·p) at s='" + state_to_string(kind, states[i]) + "', p='" +
                                presentation.generators[g] + "'";
                return check;
            }
        }
        for (std::size_t q = 0; q < psi_prime.size(); ++q) {
            auto s = states[i];
            for (auto g : psi_prime[q]) s = effect(kind, s, prepare(kind, s, gen_ops[g]));
            const auto *image = phi_of(s);
            ++check.transitions_checked;
            auto expected = add(phi[i], unit(q / 2, q % 2 ? -1 : 1));
            if (!image || *image != expected) {
                check.failure = "φ⁻¹(s')·ψ'(p') ≠ φ⁻¹(s'·p') at s'=" + integer_list(phi[i]) + ", p'='" +
                                check.psi_prime[q].first + "'";
                return check;
            }
        }
    }
    return check;
}

std::string_view verdict_name(Analysis::Verdict v) {
    switch (v) {
    case Analysis::Verdict::InvalidSpec: return "invalid-spec";
    case Analysis::Verdict::NotCommutative: return "not-commutative";
    case Analysis::Verdict::NotUndoable: return "not-undoable";
    case Analysis::Verdict::Undoable: return "undoable";
    }
    return "?";
}

Analysis analyze(const FiniteCrdtSpec &spec) {
    Analysis out;
    out.validation = validate_spec(spec);
    if (!out.validation.ok()) {
        out.verdict = Analysis::Verdict::InvalidSpec;
        out.summary = "invalid spec: " + out.validation.errors.front().message;
        return out;
    }
    out.axioms = check_axioms(spec);
    if (!out.axioms->commutative()) {
        out.verdict = Analysis::Verdict::NotCommutative;
        out.summary = "not a CRDT: " + describe(spec, *out.axioms->commutativity);
        return out;
    }
    if (!out.axioms->undoable()) {
        out.verdict = Analysis::Verdict::NotUndoable;
        out.summary = "not undoable: " + describe(spec, out.axioms->undoability.front());
        return out;
    }
    auto group = build_action_group(spec);
    out.presentation = extract_presentation(group);
    out.decomposition = decompose(*out.presentation);
    out.counters = counters_for(*out.decomposition);
    out.witness = synthesize_equivalence(spec, *out.counters->spec);
    out.verdict = Analysis::Verdict::Undoable;
    out.summary = "undoable; equivalent to " + out.counters->description + " (witness verified over all " +
                  std::to_string(spec.state_count()) + " states)";
    return out;
}

Analysis analyze_kind(const CrdtKind &kind, std::size_t ball) {
    if (kind.is_finite()) return analyze(to_finite_spec(kind));
    Analysis out;
    try {
        out.presentation = symbolic_presentation(kind);
    } catch (const GroupError &e) {
        out.verdict = Analysis::Verdict::NotUndoable;
        out.summary = std::string("not undoable: ") + e.what();
        return out;
    }
    out.decomposition = decompose(*out.presentation);
    out.counters = counters_for(*out.decomposition);
    out.bounded_witness = verify_symbolic_witness(kind, ball);
    if (out.bounded_witness->failure)
        throw std::logic_error("symbolic witness failed verification: " + *out.bounded_witness->failure);
    out.verdict = Analysis::Verdict::Undoable;
    out.summary = "undoable; equivalent to " + out.counters->description + " (witness verified on " +
                  std::to_string(out.bounded_witness->states_checked) + " states within " + std::to_string(ball) +
                  " steps of the initial state)";
    return out;
}

Analysis analyze_presentation(const Presentation &p) {
    Analysis out;
    out.presentation = p;
    out.decomposition = decompose(p);
    out.counters = counters_for(*out.decomposition);
    out.verdict = Analysis::Verdict::Undoable;
    out.summary = "presentation decomposes as " + out.decomposition->group_text() + "; tuple " +
                  out.counters->description;
    return out;
}

} // namespace crdtlab
