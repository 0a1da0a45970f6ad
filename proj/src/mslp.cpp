#include "slrec/mslp.hpp"

#include <algorithm>
#include <sstream>

namespace slrec {

Instruction Instruction::show_slots(std::vector<int> slots) {
    std::sort(slots.begin(), slots.end());
    slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
    Instruction i;
    i.op = Op::Show;
    i.show = std::move(slots);
    return i;
}

Mslp::Mslp(int quota, int ninputs, std::vector<Instruction> code)
    : quota_(quota), ninputs_(ninputs), code_(std::move(code)) {
    if (quota_ < 0 || ninputs_ < 0 || ninputs_ > quota_) throw Error("MSLP: inputs must fit the quota");
    std::vector<bool> defined(quota_ + 1, false);
    for (int s = 1; s <= ninputs_; ++s) defined[s] = true;
    auto check = [&](int s, std::size_t pos) {
        if (s < 1 || s > quota_)
            throw Error("MSLP: slot " + std::to_string(s) + " out of range at instruction " + std::to_string(pos + 1));
    };
    auto read = [&](int s, std::size_t pos) {
        check(s, pos);
        if (!defined[s])
            throw UninitializedSlotRead("slot " + std::to_string(s) + " read before written at instruction " +
                                        std::to_string(pos + 1));
    };
    for (std::size_t pos = 0; pos < code_.size(); ++pos) {
        auto& ins = code_[pos];
        switch (ins.op) {
            case Instruction::Op::Copy:
            case Instruction::Op::Inv:
                read(ins.a, pos);
                check(ins.dst, pos);
                defined[ins.dst] = true;
                break;
            case Instruction::Op::Mul:
                read(ins.a, pos);
                read(ins.b, pos);
                check(ins.dst, pos);
                defined[ins.dst] = true;
                break;
            case Instruction::Op::Show: {
                std::sort(ins.show.begin(), ins.show.end());
                ins.show.erase(std::unique(ins.show.begin(), ins.show.end()), ins.show.end());
                for (int s : ins.show) read(s, pos);
                break;
            }
        }
    }
}

std::size_t Mslp::show_count() const {
    return static_cast<std::size_t>(std::count_if(code_.begin(), code_.end(),
                                                  [](const Instruction& i) { return i.op == Instruction::Op::Show; }));
}

std::string Mslp::serialize() const {
    std::ostringstream os;
    os << "MSLP " << quota_ << ' ' << ninputs_ << '\n';
    for (const auto& ins : code_) {
        switch (ins.op) {
            case Instruction::Op::Copy: os << "CP " << ins.dst << ' ' << ins.a << '\n'; break;
            case Instruction::Op::Mul: os << "MU " << ins.dst << ' ' << ins.a << ' ' << ins.b << '\n'; break;
            case Instruction::Op::Inv: os << "IV " << ins.dst << ' ' << ins.a << '\n'; break;
            case Instruction::Op::Show:
                os << "SH";
                for (int s : ins.show) os << ' ' << s;
                os << '\n';
                break;
        }
    }
    return os.str();
}

Mslp Mslp::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) { throw ParseError("line " + std::to_string(lineno) + ": " + why); };
    auto ints = [&](std::istringstream& ls, std::size_t expect) {
        std::vector<int> v;
        long long x;
        while (ls >> x) {
            if (x < 1 || x > 1000000000LL) fail("slot index out of range");
            v.push_back(static_cast<int>(x));
        }
        if (!ls.eof()) fail("malformed integer");
        if (expect && v.size() != expect) fail("expected " + std::to_string(expect) + " operands");
        return v;
    };
    int quota = -1, ninputs = -1;
    std::vector<Instruction> code;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (quota < 0) {
            if (tag != "MSLP") fail("expected header 'MSLP quota ninputs'");
            long long qv, nv;
            if (!(ls >> qv >> nv) || qv < 0 || nv < 0 || nv > qv || qv > 100000000LL) fail("bad header");
            std::string extra;
            if (ls >> extra) fail("trailing tokens in header");
            quota = static_cast<int>(qv);
            ninputs = static_cast<int>(nv);
            continue;
        }
        if (tag == "CP") {
            auto v = ints(ls, 2);
            code.push_back(Instruction::copy(v[0], v[1]));
        } else if (tag == "MU") {
            auto v = ints(ls, 3);
            code.push_back(Instruction::mul(v[0], v[1], v[2]));
        } else if (tag == "IV") {
            auto v = ints(ls, 2);
            code.push_back(Instruction::inv(v[0], v[1]));
        } else if (tag == "SH") {
            code.push_back(Instruction::show_slots(ints(ls, 0)));
        } else {
            fail("unknown instruction '" + tag + "'");
        }
        const auto& ins = code.back();
        for (int s : {ins.dst, ins.a, ins.b})
            if (s > quota) fail("slot index exceeds quota");
        for (int s : ins.show)
            if (s > quota) fail("slot index exceeds quota");
    }
    if (quota < 0) {
        lineno = std::max(lineno, 1);
        fail("missing header");
    }
    try {
        return Mslp(quota, ninputs, std::move(code));
    } catch (const UninitializedSlotRead& e) {
        throw ParseError(e.what());
    }
}

Mslp compose(const Mslp& first, const Mslp& second, const std::vector<int>& wiring, bool keep_shows) {
    if (static_cast<int>(wiring.size()) != second.ninputs())
        throw WiringIncomplete("wiring covers " + std::to_string(wiring.size()) + " of " +
                               std::to_string(second.ninputs()) + " inputs");
    for (int s : wiring)
        if (s < 1 || s > first.quota()) throw WiringIncomplete("wired slot out of range");
    const int base = first.quota();
    std::vector<Instruction> code;
    for (const auto& ins : first.code())
        if (keep_shows || ins.op != Instruction::Op::Show) code.push_back(ins);
    for (std::size_t k = 0; k < wiring.size(); ++k)
        code.push_back(Instruction::copy(base + static_cast<int>(k) + 1, wiring[k]));
    for (auto ins : second.code()) {
        if (ins.op == Instruction::Op::Show) {
            for (auto& s : ins.show) s += base;
        } else {
            ins.dst += base;
            ins.a += base;
            if (ins.op == Instruction::Op::Mul) ins.b += base;
        }
        code.push_back(std::move(ins));
    }
    return Mslp(base + second.quota(), first.ninputs(), std::move(code));
}

}  // namespace slrec
