#include "design2/exact_sim.hpp"

#include <bit>
#include <iterator>
#include <stdexcept>

namespace design2 {

namespace {

// Row-pair loop helper: visit every index with bit q clear.
template <typename F>
void for_each_pair(std::size_t dim, unsigned q, F&& f) {
    std::size_t bit = std::size_t(1) << q;
    for (std::size_t base = 0; base < dim; ++base)
        if (!(base & bit)) f(base, base | bit);
}

}  // namespace

DenseUnitary DenseUnitary::identity(unsigned wires) {
    if (wires > 12) throw std::invalid_argument("DenseUnitary: too many wires");
    DenseUnitary u(wires, std::size_t(1) << wires);
    for (std::size_t d = 0; d < u.dim_; ++d) u.at(d, d) = Cyc8::from_int(1);
    return u;
}

void DenseUnitary::apply_gate(const Gate& g) {
    std::size_t abit = std::size_t(1) << g.a;
    std::size_t bbit = std::size_t(1) << g.b;
    switch (g.kind) {
        case GateKind::H:
            for_each_pair(dim_, g.a, [&](std::size_t r0, std::size_t r1) {
                for (std::size_t c = 0; c < dim_; ++c) {
                    Cyc8 u = at(r0, c), v = at(r1, c);
                    at(r0, c) = u + v;
                    at(r1, c) = u - v;
                }
            });
            ++scale_;
            reduce();
            break;
        case GateKind::S:
            for (std::size_t r = 0; r < dim_; ++r)
                if (r & abit)
                    for (std::size_t c = 0; c < dim_; ++c) at(r, c) = at(r, c).times_i_pow(1);
            break;
        case GateKind::Sdg:
            for (std::size_t r = 0; r < dim_; ++r)
                if (r & abit)
                    for (std::size_t c = 0; c < dim_; ++c) at(r, c) = at(r, c).times_i_pow(3);
            break;
        case GateKind::X:
            for_each_pair(dim_, g.a, [&](std::size_t r0, std::size_t r1) {
                for (std::size_t c = 0; c < dim_; ++c) std::swap(at(r0, c), at(r1, c));
            });
            break;
        case GateKind::Y:
            for_each_pair(dim_, g.a, [&](std::size_t r0, std::size_t r1) {
                for (std::size_t c = 0; c < dim_; ++c) {
                    Cyc8 u = at(r0, c), v = at(r1, c);
                    at(r0, c) = v.times_i_pow(3);
                    at(r1, c) = u.times_i_pow(1);
                }
            });
            break;
        case GateKind::Z:
            for (std::size_t r = 0; r < dim_; ++r)
                if (r & abit)
                    for (std::size_t c = 0; c < dim_; ++c) at(r, c) = -at(r, c);
            break;
        case GateKind::CNOT:
            for (std::size_t r = 0; r < dim_; ++r)
                if ((r & abit) && !(r & bbit))
                    for (std::size_t c = 0; c < dim_; ++c) std::swap(at(r, c), at(r | bbit, c));
            break;
        case GateKind::CZ:
            for (std::size_t r = 0; r < dim_; ++r)
                if ((r & abit) && (r & bbit))
                    for (std::size_t c = 0; c < dim_; ++c) at(r, c) = -at(r, c);
            break;
        case GateKind::SWAP:
            for (std::size_t r = 0; r < dim_; ++r)
                if ((r & abit) && !(r & bbit))
                    for (std::size_t c = 0; c < dim_; ++c)
                        std::swap(at(r, c), at((r ^ abit) | bbit, c));
            break;
        case GateKind::CS:
            for (std::size_t r = 0; r < dim_; ++r)
                if ((r & abit) && (r & bbit))
                    for (std::size_t c = 0; c < dim_; ++c) at(r, c) = at(r, c).times_i_pow(1);
            break;
    }
}

void DenseUnitary::apply(const CliffordCircuit& c) {
    for (const Gate& g : c.gates()) apply_gate(g);
}

DenseUnitary DenseUnitary::mul(const DenseUnitary& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("DenseUnitary::mul: size mismatch");
    DenseUnitary out(wires_, dim_);
    out.scale_ = scale_ + rhs.scale_;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t k = 0; k < dim_; ++k) {
            if (at(r, k).is_zero()) continue;
            for (std::size_t c = 0; c < dim_; ++c)
                out.at(r, c) = out.at(r, c) + at(r, k) * rhs.at(k, c);
        }
    out.reduce();
    return out;
}

DenseUnitary DenseUnitary::adjoint() const {
    DenseUnitary out(wires_, dim_);
    out.scale_ = scale_;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out.at(r, c) = at(c, r).conj();
    return out;
}

void DenseUnitary::scale_up(int extra) {
    for (int t = 0; t < extra; ++t) {
        for (Cyc8& e : m_) e = e * Cyc8::sqrt2();
        ++scale_;
    }
}

void DenseUnitary::reduce() {
    while (scale_ > 0) {
        std::vector<Cyc8> halved(m_.size());
        bool ok = true;
        for (std::size_t i = 0; i < m_.size() && ok; ++i) ok = m_[i].halve_sqrt2(halved[i]);
        if (!ok) break;
        m_ = std::move(halved);
        --scale_;
    }
}

bool DenseUnitary::equals(const DenseUnitary& other) const {
    if (dim_ != other.dim_) return false;
    DenseUnitary a = *this, b = other;
    a.reduce();
    b.reduce();
    if (a.scale_ < b.scale_) a.scale_up(b.scale_ - a.scale_);
    if (b.scale_ < a.scale_) b.scale_up(a.scale_ - b.scale_);
    return a.m_ == b.m_;
}

DenseUnitary dense_simulate(const CliffordCircuit& c) {
    DenseUnitary u = DenseUnitary::identity(c.total_wires());
    u.apply(c);
    return u;
}

DenseUnitary pauli_dense(const PauliOperator& p) {
    if (p.wires() > 12) throw std::invalid_argument("pauli_dense: too many wires");
    DenseUnitary u = DenseUnitary::identity(unsigned(p.wires()));
    std::size_t dim = u.dim();
    std::size_t xmask = 0, zmask = 0;
    for (std::size_t q = 0; q < p.wires(); ++q) {
        if (p.a.get(q)) xmask |= std::size_t(1) << q;
        if (p.b.get(q)) zmask |= std::size_t(1) << q;
    }
    DenseUnitary out = u;  // reuse shape
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < dim; ++r) out.at(r, c) = Cyc8{};
        unsigned sign = (std::popcount(c & zmask) & 1) ? 2u : 0u;
        out.at(c ^ xmask, c) = Cyc8::from_int(1).times_i_pow(p.phase + sign);
    }
    return out;
}

DenseState::DenseState(unsigned wires, const BitVec& label) : wires_(wires) {
    if (wires > 12) throw std::invalid_argument("DenseState: too many wires");
    if (label.size() != wires) throw std::invalid_argument("DenseState: label width mismatch");
    v_.assign(std::size_t(1) << wires, Cyc8{});
    std::size_t idx = 0;
    for (unsigned q = 0; q < wires; ++q)
        if (label.get(q)) idx |= std::size_t(1) << q;
    v_[idx] = Cyc8::from_int(1);
}

void DenseState::apply_gate(const Gate& g) {
    std::size_t dim = v_.size();
    std::size_t abit = std::size_t(1) << g.a;
    std::size_t bbit = std::size_t(1) << g.b;
    switch (g.kind) {
        case GateKind::H:
            for_each_pair(dim, g.a, [&](std::size_t r0, std::size_t r1) {
                Cyc8 u = v_[r0], v = v_[r1];
                v_[r0] = u + v;
                v_[r1] = u - v;
            });
            ++scale_;
            reduce();
            break;
        case GateKind::S:
            for (std::size_t r = 0; r < dim; ++r)
                if (r & abit) v_[r] = v_[r].times_i_pow(1);
            break;
        case GateKind::Sdg:
            for (std::size_t r = 0; r < dim; ++r)
                if (r & abit) v_[r] = v_[r].times_i_pow(3);
            break;
        case GateKind::X:
            for_each_pair(dim, g.a, [&](std::size_t r0, std::size_t r1) { std::swap(v_[r0], v_[r1]); });
            break;
        case GateKind::Y:
            for_each_pair(dim, g.a, [&](std::size_t r0, std::size_t r1) {
                Cyc8 u = v_[r0], v = v_[r1];
                v_[r0] = v.times_i_pow(3);
                v_[r1] = u.times_i_pow(1);
            });
            break;
        case GateKind::Z:
            for (std::size_t r = 0; r < dim; ++r)
                if (r & abit) v_[r] = -v_[r];
            break;
        case GateKind::CNOT:
            for (std::size_t r = 0; r < dim; ++r)
                if ((r & abit) && !(r & bbit)) std::swap(v_[r], v_[r | bbit]);
            break;
        case GateKind::CZ:
            for (std::size_t r = 0; r < dim; ++r)
                if ((r & abit) && (r & bbit)) v_[r] = -v_[r];
            break;
        case GateKind::SWAP:
            for (std::size_t r = 0; r < dim; ++r)
                if ((r & abit) && !(r & bbit)) std::swap(v_[r], v_[(r ^ abit) | bbit]);
            break;
        case GateKind::CS:
            for (std::size_t r = 0; r < dim; ++r)
                if ((r & abit) && (r & bbit)) v_[r] = v_[r].times_i_pow(1);
            break;
    }
}

void DenseState::apply(const CliffordCircuit& c) {
    for (const Gate& g : c.gates()) apply_gate(g);
}

void DenseState::reduce() {
    while (scale_ > 0) {
        std::vector<Cyc8> halved(v_.size());
        bool ok = true;
        for (std::size_t i = 0; i < v_.size() && ok; ++i) ok = v_[i].halve_sqrt2(halved[i]);
        if (!ok) break;
        v_ = std::move(halved);
        --scale_;
    }
}

SparseState::SparseState(unsigned wires, const BitVec& label, std::size_t max_support)
    : wires_(wires), max_support_(max_support) {
    if (label.size() != wires) throw std::invalid_argument("SparseState: label width mismatch");
    std::vector<std::uint64_t> key(label.word_count());
    for (std::size_t w = 0; w < key.size(); ++w) key[w] = label.word(w);
    amp_[key] = Cyc8::from_int(1);
}

Cyc8 SparseState::amplitude(const BitVec& label) const {
    std::vector<std::uint64_t> key(label.word_count());
    for (std::size_t w = 0; w < key.size(); ++w) key[w] = label.word(w);
    auto it = amp_.find(key);
    return it == amp_.end() ? Cyc8{} : it->second;
}

void SparseState::apply_gate(const Gate& g) {
    auto bit_of = [](const std::vector<std::uint64_t>& key, unsigned q) {
        return (key[q >> 6] >> (q & 63)) & 1u;
    };
    auto flip = [](std::vector<std::uint64_t>& key, unsigned q) {
        key[q >> 6] ^= std::uint64_t(1) << (q & 63);
    };
    switch (g.kind) {
        case GateKind::H: {
            std::map<std::vector<std::uint64_t>, Cyc8> next;
            for (auto& [key, val] : amp_) {
                bool one = bit_of(key, g.a);
                std::vector<std::uint64_t> k0 = key;
                if (one) flip(k0, g.a);
                std::vector<std::uint64_t> k1 = k0;
                flip(k1, g.a);
                next[k0] = next[k0] + val;
                next[k1] = next[k1] + (one ? -val : val);
            }
            for (auto it = next.begin(); it != next.end();)
                it = it->second.is_zero() ? next.erase(it) : std::next(it);
            amp_ = std::move(next);
            ++scale_;
            reduce();
            if (amp_.size() > max_support_)
                throw SupportOverflow("SparseState: support exceeded cap");
            break;
        }
        case GateKind::S:
            for (auto& [key, val] : amp_)
                if (bit_of(key, g.a)) val = val.times_i_pow(1);
            break;
        case GateKind::Sdg:
            for (auto& [key, val] : amp_)
                if (bit_of(key, g.a)) val = val.times_i_pow(3);
            break;
        case GateKind::Z:
            for (auto& [key, val] : amp_)
                if (bit_of(key, g.a)) val = -val;
            break;
        case GateKind::CZ:
            for (auto& [key, val] : amp_)
                if (bit_of(key, g.a) && bit_of(key, g.b)) val = -val;
            break;
        case GateKind::CS:
            for (auto& [key, val] : amp_)
                if (bit_of(key, g.a) && bit_of(key, g.b)) val = val.times_i_pow(1);
            break;
        case GateKind::X: {
            std::map<std::vector<std::uint64_t>, Cyc8> next;
            for (auto& [key, val] : amp_) {
                auto k = key;
                flip(k, g.a);
                next[k] = val;
            }
            amp_ = std::move(next);
            break;
        }
        case GateKind::Y: {
            std::map<std::vector<std::uint64_t>, Cyc8> next;
            for (auto& [key, val] : amp_) {
                auto k = key;
                bool one = bit_of(k, g.a);
                flip(k, g.a);
                next[k] = val.times_i_pow(one ? 3 : 1);
            }
            amp_ = std::move(next);
            break;
        }
        case GateKind::CNOT: {
            std::map<std::vector<std::uint64_t>, Cyc8> next;
            for (auto& [key, val] : amp_) {
                auto k = key;
                if (bit_of(k, g.a)) flip(k, g.b);
                next[k] = val;
            }
            amp_ = std::move(next);
            break;
        }
        case GateKind::SWAP: {
            std::map<std::vector<std::uint64_t>, Cyc8> next;
            for (auto& [key, val] : amp_) {
                auto k = key;
                bool va = bit_of(k, g.a), vb = bit_of(k, g.b);
                if (va != vb) {
                    flip(k, g.a);
                    flip(k, g.b);
                }
                next[k] = val;
            }
            amp_ = std::move(next);
            break;
        }
    }
}

void SparseState::apply(const CliffordCircuit& c) {
    for (const Gate& g : c.gates()) apply_gate(g);
}

void SparseState::reduce() {
    while (scale_ > 0) {
        std::map<std::vector<std::uint64_t>, Cyc8> halved;
        bool ok = true;
        for (auto& [key, val] : amp_) {
            Cyc8 h;
            if (!val.halve_sqrt2(h)) {
                ok = false;
                break;
            }
            halved[key] = h;
        }
        if (!ok) break;
        amp_ = std::move(halved);
        --scale_;
    }
}

namespace {

// One column of the effective data-space action via the sparse simulator.
void code_column_sparse(const CliffordCircuit& c, std::size_t x, std::size_t max_support,
                        DenseUnitary& out, int& col_scale, std::size_t col) {
    unsigned total = c.total_wires();
    BitVec label(total);
    for (unsigned q = 0; q < c.n_data(); ++q)
        if ((x >> q) & 1) label.set(q, true);
    SparseState st(total, label, max_support);
    st.apply(c);
    col_scale = st.scale();
    for (auto& [key, val] : st.amplitudes()) {
        std::size_t y = 0;
        bool anc_clean = true;
        for (unsigned q = 0; q < total; ++q) {
            bool bit = (key[q >> 6] >> (q & 63)) & 1u;
            if (q < c.n_data()) {
                if (bit) y |= std::size_t(1) << q;
            } else if (bit) {
                anc_clean = false;
            }
        }
        if (!anc_clean)
            throw std::runtime_error("code_space_unitary: amplitude left on an ancilla wire");
        out.at(y, col) = val;
    }
}

void code_column_dense(const CliffordCircuit& c, std::size_t x, DenseUnitary& out,
                       int& col_scale, std::size_t col) {
    unsigned total = c.total_wires();
    BitVec label(total);
    for (unsigned q = 0; q < c.n_data(); ++q)
        if ((x >> q) & 1) label.set(q, true);
    DenseState st(total, label);
    st.apply(c);
    col_scale = st.scale();
    std::size_t data_dim = std::size_t(1) << c.n_data();
    std::size_t full_dim = std::size_t(1) << total;
    for (std::size_t idx = 0; idx < full_dim; ++idx) {
        if (st.amp(idx).is_zero()) continue;
        if (idx >= data_dim)
            throw std::runtime_error("code_space_unitary: amplitude left on an ancilla wire");
        out.at(idx, col) = st.amp(idx);
    }
}

}  // namespace

DenseUnitary code_space_unitary(const CliffordCircuit& c, std::size_t max_support) {
    if (c.n_data() > 12)
        throw std::invalid_argument("code_space_unitary: too many data wires");
    DenseUnitary out = DenseUnitary::identity(c.n_data());
    std::size_t dim = out.dim();
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t cc = 0; cc < dim; ++cc) out.at(r, cc) = Cyc8{};

    std::vector<int> col_scale(dim, 0);
    for (std::size_t x = 0; x < dim; ++x) {
        try {
            code_column_sparse(c, x, max_support, out, col_scale[x], x);
        } catch (const SupportOverflow&) {
            if (c.total_wires() > 12) throw;
            code_column_dense(c, x, out, col_scale[x], x);
        }
    }

    // unify the per-column scales at the maximum, then record it
    int target = 0;
    for (int s : col_scale) target = std::max(target, s);
    for (std::size_t x = 0; x < dim; ++x)
        for (int t = col_scale[x]; t < target; ++t)
            for (std::size_t r = 0; r < dim; ++r) out.at(r, x) = out.at(r, x) * Cyc8::sqrt2();
    out.set_scale(target);
    out.reduce();
    return out;
}

}  // namespace design2
