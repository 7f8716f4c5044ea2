#include "design2/circuit.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace design2 {

bool is_two_qubit(GateKind k) {
    switch (k) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::SWAP:
        case GateKind::CS:
            return true;
        default:
            return false;
    }
}

const char* to_string(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "SDG";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::CS: return "CS";
    }
    return "?";
}

bool parse_gate_kind(const std::string& name, GateKind& out) {
    static const std::pair<const char*, GateKind> table[] = {
        {"H", GateKind::H},       {"S", GateKind::S},     {"SDG", GateKind::Sdg},
        {"X", GateKind::X},       {"Y", GateKind::Y},     {"Z", GateKind::Z},
        {"CNOT", GateKind::CNOT}, {"CZ", GateKind::CZ},   {"SWAP", GateKind::SWAP},
        {"CS", GateKind::CS},
    };
    for (auto& [s, k] : table)
        if (name == s) {
            out = k;
            return true;
        }
    return false;
}

void CliffordCircuit::grow_ancilla(unsigned n_ancilla) {
    if (n_ancilla < n_ancilla_)
        throw std::invalid_argument("grow_ancilla: cannot shrink the ancilla region");
    n_ancilla_ = n_ancilla;
}

void CliffordCircuit::add(GateKind kind, unsigned wire) {
    if (is_two_qubit(kind))
        throw std::invalid_argument("gate needs two wires");
    if (wire >= total_wires())
        throw std::invalid_argument("wire index out of range");
    gates_.push_back(Gate{kind, wire, 0});
}

void CliffordCircuit::add(GateKind kind, unsigned a, unsigned b) {
    if (!is_two_qubit(kind))
        throw std::invalid_argument("gate takes one wire");
    if (a >= total_wires() || b >= total_wires())
        throw std::invalid_argument("wire index out of range");
    if (a == b)
        throw std::invalid_argument("two-qubit gate needs distinct wires");
    if (kind == GateKind::CS) clifford_only_ = false;
    gates_.push_back(Gate{kind, a, b});
}

void CliffordCircuit::add(const Gate& g) {
    if (is_two_qubit(g.kind))
        add(g.kind, g.a, g.b);
    else
        add(g.kind, g.a);
}

CircuitMetrics metrics(const CliffordCircuit& c) {
    CircuitMetrics m;
    m.gate_count = c.gates().size();
    m.ancilla_count = c.n_ancilla();
    std::vector<std::size_t> level(c.total_wires(), 0);
    for (const Gate& g : c.gates()) {
        std::size_t l = level[g.a];
        if (is_two_qubit(g.kind)) l = std::max(l, level[g.b]);
        ++l;
        level[g.a] = l;
        if (is_two_qubit(g.kind)) level[g.b] = l;
        m.depth = std::max(m.depth, l);
    }
    return m;
}

CliffordCircuit compose(const CliffordCircuit& a, const CliffordCircuit& b) {
    if (a.n_data() != b.n_data())
        throw std::invalid_argument("compose: data width mismatch");
    CliffordCircuit out(a.n_data(), std::max(a.n_ancilla(), b.n_ancilla()));
    out.set_clifford_only(a.clifford_only() && b.clifford_only());
    out.set_ancilla_restored(a.ancilla_restored() && b.ancilla_restored());
    for (const Gate& g : a.gates()) out.add(g);
    for (const Gate& g : b.gates()) out.add(g);
    return out;
}

CliffordCircuit invert(const CliffordCircuit& c) {
    CliffordCircuit out(c.n_data(), c.n_ancilla());
    out.set_clifford_only(c.clifford_only());
    out.set_ancilla_restored(c.ancilla_restored());
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
        switch (it->kind) {
            case GateKind::S:
                out.add(GateKind::Sdg, it->a);
                break;
            case GateKind::Sdg:
                out.add(GateKind::S, it->a);
                break;
            case GateKind::CS:
                out.add(GateKind::CS, it->a, it->b);
                out.add(GateKind::CZ, it->a, it->b);
                break;
            default:
                out.add(*it);
                break;
        }
    }
    return out;
}

std::string serialize(const CliffordCircuit& c) {
    std::ostringstream os;
    os << "design2-circuit v1\n";
    os << "n_data " << c.n_data() << " n_ancilla " << c.n_ancilla() << " clifford_only "
       << (c.clifford_only() ? 1 : 0) << " ancilla_restored " << (c.ancilla_restored() ? 1 : 0)
       << "\n";
    for (const Gate& g : c.gates()) {
        os << to_string(g.kind) << ' ' << g.a;
        if (is_two_qubit(g.kind)) os << ' ' << g.b;
        os << '\n';
    }
    return os.str();
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw std::invalid_argument("circuit parse error at line " + std::to_string(line_no) +
                                ": " + what);
}

bool parse_uint(const std::string& tok, unsigned& out) {
    if (tok.empty() || tok.size() > 9) return false;
    unsigned v = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') return false;
        v = v * 10 + unsigned(ch - '0');
    }
    out = v;
    return true;
}

}  // namespace

CliffordCircuit parse_circuit(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;

    auto next_content_line = [&](std::string& out) -> bool {
        while (std::getline(is, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t start = line.find_first_not_of(" \t");
            if (start == std::string::npos) continue;
            if (line[start] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string l;
    if (!next_content_line(l)) parse_fail(line_no + 1, "missing header");
    if (l != "design2-circuit v1") parse_fail(line_no, "bad header, expected 'design2-circuit v1'");

    if (!next_content_line(l)) parse_fail(line_no + 1, "missing width line");
    std::istringstream ws(l);
    std::string k1, k2, k3, k4;
    unsigned n_data = 0, n_anc = 0;
    int co = -1, ar = -1;
    if (!(ws >> k1 >> n_data >> k2 >> n_anc >> k3 >> co >> k4 >> ar) || k1 != "n_data" ||
        k2 != "n_ancilla" || k3 != "clifford_only" || k4 != "ancilla_restored" || co < 0 ||
        co > 1 || ar < 0 || ar > 1)
        parse_fail(line_no, "bad width line");
    std::string rest;
    if (ws >> rest) parse_fail(line_no, "trailing tokens on width line");

    CliffordCircuit c(n_data, n_anc);
    c.set_ancilla_restored(ar == 1);
    while (next_content_line(l)) {
        std::istringstream gs(l);
        std::string kind_tok, wa, wb;
        gs >> kind_tok >> wa;
        GateKind kind;
        if (!parse_gate_kind(kind_tok, kind)) parse_fail(line_no, "unknown gate '" + kind_tok + "'");
        unsigned a = 0, b = 0;
        if (!parse_uint(wa, a)) parse_fail(line_no, "bad wire index");
        if (is_two_qubit(kind)) {
            if (!(gs >> wb) || !parse_uint(wb, b)) parse_fail(line_no, "missing second wire");
        }
        if (gs >> rest) parse_fail(line_no, "trailing tokens");
        if (kind == GateKind::CS && co == 1)
            parse_fail(line_no, "CS gate in a circuit declared clifford_only");
        try {
            if (is_two_qubit(kind))
                c.add(kind, a, b);
            else
                c.add(kind, a);
        } catch (const std::invalid_argument& e) {
            parse_fail(line_no, e.what());
        }
    }
    c.set_clifford_only(co == 1);
    return c;
}

}  // namespace design2
