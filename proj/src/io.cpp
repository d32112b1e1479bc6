#include "qwres/io.hpp"

#include "qwres/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qwres {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw DomainError(where + ": expected a complex number [re, im]");
}

json walk_to_json(const CoinSequence& coins) {
    json list = json::array();
    for (const auto& [x, c] : coins.coins()) {
        const Mat2& m = c.matrix();
        json mat = json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                                json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
        list.push_back(json{{"x", x}, {"matrix", mat}});
    }
    return json{{"coins", list}};
}

json state_to_json(const WalkState& psi) {
    json list = json::array();
    const IntervalZ w = psi.window();
    for (int x = w.lo; x <= w.hi; ++x) {
        const Vec2 v = psi.at(x);
        if (v.isZero(0.0)) continue;
        list.push_back(json{{"x", x}, {"L", to_json(v(0))}, {"R", to_json(v(1))}});
    }
    return json{{"amplitudes", list}};
}

namespace {

int site_of(const json& e, const std::string& where) {
    if (!e.is_object() || !e.contains("x")) throw DomainError(where + ": missing site \"x\"");
    const json& x = e["x"];
    if (!x.is_number_integer()) throw DomainError(where + ".x: expected an integer");
    return x.get<int>();
}

} // namespace

CoinSequence walk_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coins") || !j["coins"].is_array())
        throw DomainError("walk: expected an object with a \"coins\" array");
    std::map<int, Coin> coins;
    const json& list = j["coins"];
    for (size_t i = 0; i < list.size(); ++i) {
        const std::string where = "coins[" + std::to_string(i) + "]";
        const json& e = list[i];
        const int x = site_of(e, where);
        if (coins.count(x)) throw DomainError(where + ": site " + std::to_string(x) + " given twice");
        try {
            if (e.contains("rotation")) {
                if (!e["rotation"].is_number()) throw DomainError(where + ".rotation: expected a number");
                coins[x] = Coin::rotation(e["rotation"].get<double>());
            } else if (e.contains("matrix")) {
                const json& m = e["matrix"];
                if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() ||
                    m[1].size() != 2)
                    throw DomainError(where + ".matrix: expected a 2x2 array");
                Mat2 c;
                for (int r = 0; r < 2; ++r)
                    for (int s = 0; s < 2; ++s)
                        c(r, s) = complex_from_json(m[r][s], where + ".matrix[" + std::to_string(r) + "][" +
                                                                  std::to_string(s) + "]");
                coins[x] = Coin(c);
            } else {
                throw DomainError(where + ": expected \"matrix\" or \"rotation\"");
            }
        } catch (const DomainError& err) {
            const std::string msg = err.what();
            if (msg.rfind(where, 0) == 0) throw;
            throw DomainError(where + ": " + msg);
        }
    }
    return CoinSequence(coins);
}

WalkState state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("amplitudes") || !j["amplitudes"].is_array())
        throw DomainError("state: expected an object with an \"amplitudes\" array");
    const json& list = j["amplitudes"];
    if (list.empty()) throw DomainError("state: \"amplitudes\" is empty");
    WalkState psi;
    bool first = true;
    for (size_t i = 0; i < list.size(); ++i) {
        const std::string where = "amplitudes[" + std::to_string(i) + "]";
        const json& e = list[i];
        const int x = site_of(e, where);
        const cplx l = e.contains("L") ? complex_from_json(e["L"], where + ".L") : cplx{};
        const cplx r = e.contains("R") ? complex_from_json(e["R"], where + ".R") : cplx{};
        if (first) {
            psi = WalkState(IntervalZ::of(x, x));
            first = false;
        }
        psi.add(x, Vec2(l, r));
    }
    return psi;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << path << ":" << line << ":" << col << ": malformed JSON";
        throw DomainError(os.str());
    }
}

CoinSequence read_walk(const std::string& path) {
    try {
        return walk_from_json(read_json_file(path));
    } catch (const DomainError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path, 0) == 0) throw;
        throw DomainError(path + ": " + msg);
    }
}

WalkState read_state(const std::string& path) {
    try {
        return state_from_json(read_json_file(path));
    } catch (const DomainError& e) {
        const std::string msg = e.what();
        if (msg.rfind(path, 0) == 0) throw;
        throw DomainError(path + ": " + msg);
    }
}

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError(path + ": cannot write file");
        out << text;
        if (!out) throw DomainError(path + ": write failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw DomainError(path + ": cannot rename temporary file");
    }
}

} // namespace qwres
