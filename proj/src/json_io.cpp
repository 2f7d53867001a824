#include "padic/json_io.hpp"

#include <fstream>

namespace padic {

namespace {

const Json& need(const Json& j, const char* field, const char* context) {
    if (!j.is_object() || !j.contains(field))
        fail("schema", std::string("missing field '") + field + "' in " + context);
    return j.at(field);
}

int need_int(const Json& j, const char* field, const char* context) {
    const Json& v = need(j, field, context);
    if (!v.is_number_integer())
        fail("schema", std::string("field '") + field + "' in " + context + " must be an integer");
    return v.get<int>();
}

double need_num(const Json& j, const char* field, const char* context) {
    const Json& v = need(j, field, context);
    if (!v.is_number())
        fail("schema", std::string("field '") + field + "' in " + context + " must be a number");
    return v.get<double>();
}

std::string need_str(const Json& j, const char* field, const char* context) {
    const Json& v = need(j, field, context);
    if (!v.is_string())
        fail("schema", std::string("field '") + field + "' in " + context + " must be a string");
    return v.get<std::string>();
}

} // namespace

Json to_json(const PAdic& x) {
    Json j;
    j["p"] = x.prime();
    j["v"] = x.is_zero() ? 0 : x.lowest_position();
    j["digits"] = x.digits();
    return j;
}

PAdic padic_from_json(const Json& j, int precision) {
    std::uint32_t p = static_cast<std::uint32_t>(need_int(j, "p", "p-adic value"));
    int v = need_int(j, "v", "p-adic value");
    const Json& dj = need(j, "digits", "p-adic value");
    if (!dj.is_array()) fail("schema", "field 'digits' in p-adic value must be an array");
    std::vector<std::uint32_t> digits;
    for (const Json& e : dj) digits.push_back(e.get<std::uint32_t>());
    return PAdic::from_digits(p, v, std::move(digits), v + precision);
}

Json to_json(const Ball& b) {
    Json j;
    j["p"] = b.prime();
    j["d"] = b.dim();
    j["L"] = b.level();
    Json coords = Json::array();
    std::string enc = b.encode();
    // reuse the frozen flat encoding per coordinate
    auto at = enc.find("c=");
    std::string rest = enc.substr(at + 2);
    std::string cur;
    for (char c : rest) {
        if (c == ';') {
            coords.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    coords.push_back(cur);
    j["c"] = coords;
    return j;
}

Ball ball_from_json(const Json& j) {
    if (j.is_string()) return Ball::decode(j.get<std::string>());
    std::uint32_t p = static_cast<std::uint32_t>(need_int(j, "p", "ball"));
    int d = need_int(j, "d", "ball");
    int L = need_int(j, "L", "ball");
    const Json& cj = need(j, "c", "ball");
    if (!cj.is_array() || static_cast<int>(cj.size()) != d)
        fail("schema", "field 'c' in ball must be an array of d coordinate strings");
    std::string enc = "p=" + std::to_string(p) + ";d=" + std::to_string(d) +
                      ";L=" + std::to_string(L) + ";c=";
    for (int i = 0; i < d; ++i) {
        if (i > 0) enc += ';';
        enc += cj.at(static_cast<std::size_t>(i)).get<std::string>();
    }
    return Ball::decode(enc);
}

Json to_json(const WaveletIndex& idx) {
    Json j;
    j["gamma"] = idx.gamma;
    j["n"] = idx.n;
    j["J"] = idx.J;
    return j;
}

WaveletIndex wavelet_index_from_json(const Json& j) {
    WaveletIndex idx;
    idx.gamma = need_int(j, "gamma", "wavelet index");
    const Json& nj = need(j, "n", "wavelet index");
    for (const Json& coord : nj) {
        std::vector<std::uint32_t> digits;
        for (const Json& e : coord) digits.push_back(e.get<std::uint32_t>());
        idx.n.push_back(std::move(digits));
    }
    const Json& jj = need(j, "J", "wavelet index");
    for (const Json& e : jj) idx.J.push_back(e.get<std::uint32_t>());
    return idx;
}

Json to_json(const LCFunction& f) {
    Json j;
    j["support"] = to_json(f.support());
    j["R"] = f.resolution();
    Json cells = Json::array();
    const std::uint64_t branch = f.support().child_count();
    const int depth = f.resolution() - f.support().level();
    for (std::uint64_t i = 0; i < f.cell_count(); ++i) {
        Json cell;
        std::vector<std::uint64_t> path(static_cast<std::size_t>(depth));
        std::uint64_t rem = i;
        for (int l = depth; l-- > 0;) {
            path[static_cast<std::size_t>(l)] = rem % branch;
            rem /= branch;
        }
        cell["path"] = path;
        cell["re"] = f.cells()[i].real();
        cell["im"] = f.cells()[i].imag();
        cells.push_back(std::move(cell));
    }
    j["cells"] = cells;
    return j;
}

LCFunction lc_function_from_json(const Json& j) {
    Ball support = ball_from_json(need(j, "support", "function"));
    int R = need_int(j, "R", "function");
    const Json& cj = need(j, "cells", "function");
    if (!cj.is_array()) fail("schema", "field 'cells' in function must be an array");
    std::uint64_t want = 1;
    for (int l = support.level(); l < R; ++l) want *= support.child_count();
    std::vector<Complex> cells(want, Complex{0.0, 0.0});
    std::vector<bool> seen(want, false);
    const std::uint64_t branch = support.child_count();
    for (const Json& cell : cj) {
        const Json& pj = need(cell, "path", "function cell");
        std::uint64_t idx = 0;
        for (const Json& e : pj) {
            std::uint64_t cls = e.get<std::uint64_t>();
            if (cls >= branch) fail("schema", "field 'path' in function cell has an index out of range");
            idx = idx * branch + cls;
        }
        if (pj.size() != static_cast<std::size_t>(R - support.level()))
            fail("schema", "field 'path' in function cell has the wrong depth");
        if (idx >= want || seen[idx]) fail("schema", "field 'path' in function cell repeats a cell");
        seen[idx] = true;
        cells[idx] = Complex{need_num(cell, "re", "function cell"), need_num(cell, "im", "function cell")};
    }
    for (bool s : seen)
        if (!s) fail("missing-cells", "function table does not cover every cell");
    return LCFunction(std::move(support), R, std::move(cells));
}

Json to_json(const KernelSpec& F) {
    Json j;
    Json table = Json::array();
    for (const auto& [key, value] : F.table) {
        Json e;
        e["ball"] = key;
        e["re"] = value.real();
        e["im"] = value.imag();
        table.push_back(std::move(e));
    }
    j["table"] = table;
    j["tail"] = Json{{"c_re", F.tail_c.real()},
                     {"c_im", F.tail_c.imag()},
                     {"alpha", F.tail_alpha},
                     {"from_level", F.tail_from}};
    return j;
}

KernelSpec kernel_from_json(const Json& j) {
    KernelSpec F;
    const Json& tj = need(j, "tail", "kernel");
    F.tail_c = Complex{need_num(tj, "c_re", "kernel tail"), need_num(tj, "c_im", "kernel tail")};
    F.tail_alpha = need_num(tj, "alpha", "kernel tail");
    F.tail_from = need_int(tj, "from_level", "kernel tail");
    if (j.contains("table")) {
        for (const Json& e : j.at("table")) {
            std::string key = need_str(e, "ball", "kernel table entry");
            Ball::decode(key); // validates
            F.table[key] = Complex{need_num(e, "re", "kernel table entry"),
                                   need_num(e, "im", "kernel table entry")};
        }
    }
    F.validate();
    return F;
}

Json to_json(const VectorField& k) {
    Json j;
    j["p"] = k.prime();
    j["d"] = k.dim();
    if (k.is_seeded()) {
        j["kind"] = "seeded";
        j["seed"] = k.seed();
    } else {
        j["kind"] = "table";
        Json entries = Json::array();
        for (const auto& [key, k1] : k.entries()) {
            Json e;
            e["ball"] = key;
            e["k1"] = k1;
            entries.push_back(std::move(e));
        }
        j["entries"] = entries;
        j["default"] = k.default_k1();
    }
    return j;
}

VectorField field_from_json(const Json& j) {
    std::uint32_t p = static_cast<std::uint32_t>(need_int(j, "p", "vector field"));
    int d = need_int(j, "d", "vector field");
    std::string kind = need_str(j, "kind", "vector field");
    if (kind == "seeded") {
        std::uint64_t seed = need(j, "seed", "vector field").get<std::uint64_t>();
        return VectorField::seeded(p, d, seed);
    }
    if (kind != "table") fail("schema", "field 'kind' in vector field must be 'seeded' or 'table'");
    std::map<std::string, FpVec> entries;
    if (j.contains("entries")) {
        for (const Json& e : j.at("entries")) {
            std::string key = need_str(e, "ball", "vector field entry");
            FpVec k1;
            for (const Json& x : need(e, "k1", "vector field entry")) k1.push_back(x.get<std::uint32_t>());
            entries[key] = std::move(k1);
        }
    }
    FpVec dflt;
    for (const Json& x : need(j, "default", "vector field")) dflt.push_back(x.get<std::uint32_t>());
    return VectorField::from_table(p, d, std::move(entries), std::move(dflt));
}

Json to_json(const Window& w) {
    Json j;
    j["ball"] = to_json(w.ball);
    j["resolution"] = w.resolution;
    return j;
}

Window window_from_json(const Json& j) {
    Window w;
    w.ball = ball_from_json(need(j, "ball", "window"));
    w.resolution = need_int(j, "resolution", "window");
    return w;
}

Morphism morphism_from_json(const Json& j) {
    std::string kind = need_str(j, "kind", "morphism");
    if (kind == "dilation") {
        std::uint32_t p = static_cast<std::uint32_t>(need_int(j, "p", "morphism"));
        int d = need_int(j, "d", "morphism");
        return Morphism::dilation(p, d, need_int(j, "gamma", "morphism"));
    }
    if (kind == "affine") {
        std::uint32_t p = static_cast<std::uint32_t>(need_int(j, "p", "morphism"));
        PAdic a = PAdic::parse(need_str(j, "a", "morphism"), p, 32);
        PAdic u = PAdic::parse(need_str(j, "u", "morphism"), p, 32);
        return make_affine_morphism({a, u});
    }
    if (kind == "isometry") {
        std::uint32_t p = static_cast<std::uint32_t>(need_int(j, "p", "morphism"));
        int d = need_int(j, "d", "morphism");
        if (j.contains("table")) {
            TableIsometrySpec spec;
            spec.p = p;
            spec.d = d;
            if (j.contains("anchor")) spec.anchor = j.at("anchor").get<int>();
            for (const Json& e : j.at("table")) {
                std::string key = need_str(e, "ball", "isometry table entry");
                if (e.contains("perm")) {
                    std::vector<std::uint32_t> perm;
                    for (const Json& x : e.at("perm")) perm.push_back(x.get<std::uint32_t>());
                    spec.actions.emplace(key, ChildAction::from_permutation(p, d, std::move(perm)));
                } else {
                    FpMat A(p, d);
                    const Json& aj = need(e, "A", "isometry table entry");
                    for (int r = 0; r < d; ++r)
                        for (int c = 0; c < d; ++c)
                            A.at(r, c) = aj.at(static_cast<std::size_t>(r))
                                             .at(static_cast<std::size_t>(c))
                                             .get<std::uint32_t>();
                    FpVec b;
                    for (const Json& x : need(e, "b", "isometry table entry"))
                        b.push_back(x.get<std::uint32_t>());
                    spec.actions.emplace(key, ChildAction::from_affine(A, b));
                }
            }
            return make_isometry(spec);
        }
        SeededIsometrySpec spec;
        spec.p = p;
        spec.d = d;
        spec.seed = need(j, "seed", "morphism").get<std::uint64_t>();
        std::string mode = j.contains("mode") ? j.at("mode").get<std::string>()
                                              : (d == 1 ? "perm" : "affine");
        if (mode == "perm")
            spec.mode = SeededMode::permutation;
        else if (mode == "affine")
            spec.mode = SeededMode::affine;
        else
            fail("schema", "field 'mode' in morphism must be 'perm' or 'affine'");
        if (j.contains("anchor")) spec.anchor = j.at("anchor").get<int>();
        return make_isometry(spec);
    }
    if (kind == "compose") {
        const Json& parts = need(j, "parts", "morphism");
        if (!parts.is_array() || parts.empty())
            fail("schema", "field 'parts' in morphism must be a non-empty array");
        // parts are applied right to left: parts[0] is outermost
        Morphism m = morphism_from_json(parts.back());
        for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
            m = compose(morphism_from_json(*it), m);
        return m;
    }
    fail("schema", "field 'kind' in morphism must be dilation|affine|isometry|compose");
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("io", "cannot open file " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail("schema", "malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

} // namespace padic
