#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "certificates.hpp"
#include "matrix.hpp"
#include "pencil.hpp"
#include "rational.hpp"

namespace hypercone {

using nlohmann::json;

// ---- pencil documents -------------------------------------------------------
//
// Lossless native format: coefficient matrices as sparse upper-triangle
// triples with "p/q" rational entries plus a provenance block.

struct PencilDocument {
    int format_version = 1;
    int n = 0;
    std::size_t size = 0;
    std::vector<std::string> labels;
    SymPencil pencil;
    json provenance;  // generator, parameters, seed
};

inline json pencil_document_to_json(const PencilDocument& doc) {
    json j;
    j["format_version"] = doc.format_version;
    j["n"] = doc.n;
    j["size"] = doc.size;
    j["labels"] = doc.labels;
    json coeffs = json::array();
    for (int v = 0; v < doc.n; ++v) {
        json triples = json::array();
        const RatMatrix& m = doc.pencil.coeff[v];
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = r; c < m.cols(); ++c)
                if (m(r, c) != 0) triples.push_back({r, c, to_string(m(r, c))});
        coeffs.push_back({{"var", v + 1}, {"entries", triples}});
    }
    j["coefficients"] = coeffs;
    j["provenance"] = doc.provenance;
    return j;
}

inline PencilDocument pencil_document_from_json(const json& j) {
    PencilDocument doc;
    doc.format_version = j.at("format_version").get<int>();
    doc.n = j.at("n").get<int>();
    doc.size = j.at("size").get<std::size_t>();
    if (j.contains("labels")) doc.labels = j.at("labels").get<std::vector<std::string>>();
    doc.pencil.n = doc.n;
    doc.pencil.size = doc.size;
    doc.pencil.labels = doc.labels;
    doc.pencil.coeff.assign(doc.n, RatMatrix(doc.size, doc.size));
    for (const auto& cj : j.at("coefficients")) {
        int v = cj.at("var").get<int>() - 1;
        if (v < 0 || v >= doc.n) throw std::invalid_argument("pencil json: bad variable index");
        for (const auto& t : cj.at("entries")) {
            std::size_t r = t.at(0).get<std::size_t>();
            std::size_t c = t.at(1).get<std::size_t>();
            Rational val = parse_rational(t.at(2).get<std::string>());
            doc.pencil.coeff[v](r, c) = val;
            doc.pencil.coeff[v](c, r) = val;
        }
    }
    if (j.contains("provenance")) doc.provenance = j.at("provenance");
    return doc;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void save_pencil_document(const PencilDocument& doc, const std::string& path) {
    write_text_file(path, pencil_document_to_json(doc).dump(2) + "\n");
}

inline PencilDocument load_pencil_document(const std::string& path) {
    return pencil_document_from_json(json::parse(read_text_file(path)));
}

// ---- SDPA sparse ------------------------------------------------------------
//
// Interchange format toward SDP solvers. SDPA has no rationals, so every
// block is scaled to integers and the common denominator is declared in a
// structured comment that the importer understands:
//     *DENOM <block> <denominator>
// Objective and RHS are zeroed; the file carries the constraint matrices
// x_i -> A_i of the pencil.

inline std::string pencil_to_sdpa(const PencilDocument& doc) {
    std::ostringstream out;
    out << "\"generated by hypercone; entries scaled by the declared denominator\"\n";
    std::vector<Rational> all;
    for (const auto& m : doc.pencil.coeff)
        for (const auto& q : m.data()) all.push_back(q);
    Integer den = common_denominator(all);
    out << "*DENOM 1 " << den.get_str() << "\n";
    out << doc.n << " = mDIM\n";
    out << "1 = nBLOCK\n";
    out << doc.size << " = bLOCKsTRUCT\n";
    for (int v = 0; v < doc.n; ++v) out << (v ? " " : "") << 0;
    out << "\n";
    for (int v = 0; v < doc.n; ++v) {
        const RatMatrix& m = doc.pencil.coeff[v];
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = r; c < m.cols(); ++c) {
                if (m(r, c) == 0) continue;
                Integer scaled = Integer(m(r, c).get_num()) * (den / Integer(m(r, c).get_den()));
                out << (v + 1) << " 1 " << (r + 1) << " " << (c + 1) << " " << scaled.get_str()
                    << "\n";
            }
    }
    return out.str();
}

inline PencilDocument pencil_from_sdpa(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Integer den = 1;
    std::vector<std::string> body;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '"') continue;
        if (line[0] == '*') {
            std::istringstream ls(line.substr(1));
            std::string tag;
            ls >> tag;
            if (tag == "DENOM") {
                int block;
                std::string d;
                ls >> block >> d;
                den = Integer(d);
            }
            continue;
        }
        body.push_back(line);
    }
    if (body.size() < 4) throw std::invalid_argument("sdpa: truncated file");
    auto leading_int = [](const std::string& s) {
        std::istringstream ls(s);
        long v;
        ls >> v;
        return v;
    };
    PencilDocument doc;
    doc.n = static_cast<int>(leading_int(body[0]));
    long nblock = leading_int(body[1]);
    if (nblock != 1) throw std::invalid_argument("sdpa: expected a single block");
    doc.size = static_cast<std::size_t>(leading_int(body[2]));
    doc.pencil.n = doc.n;
    doc.pencil.size = doc.size;
    doc.pencil.coeff.assign(doc.n, RatMatrix(doc.size, doc.size));
    for (std::size_t i = 4; i < body.size(); ++i) {
        std::istringstream ls(body[i]);
        long var, block, r, c;
        std::string val;
        if (!(ls >> var >> block >> r >> c >> val)) continue;
        if (var < 1 || var > doc.n) throw std::invalid_argument("sdpa: bad matrix index");
        Rational q = make_rational(Integer(val), den);
        doc.pencil.coeff[var - 1](r - 1, c - 1) = q;
        doc.pencil.coeff[var - 1](c - 1, r - 1) = q;
    }
    return doc;
}

// ---- certificates -----------------------------------------------------------

inline json certificate_to_json(const Certificate& cert) {
    json j;
    j["kind"] = cert.kind;
    j["n"] = cert.n;
    j["d"] = cert.d;
    json a = json::array();
    for (std::size_t r = 0; r < cert.a.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < cert.a.cols(); ++c) row.push_back(to_string(cert.a(r, c)));
        a.push_back(row);
    }
    j["target"] = {{"kind", cert.kind}, {"n", cert.n}, {"d", cert.d}, {"A", a}};
    json gram = json::array();
    for (std::size_t r = 0; r < cert.gram.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < cert.gram.cols(); ++c)
            row.push_back(to_string(cert.gram(r, c)));
        gram.push_back(row);
    }
    j["gram"] = gram;
    j["scale"] = to_string(cert.scale);
    json basis = json::array();
    for (const auto& ev : cert.basis) {
        json terms = json::array();
        for (const auto& t : ev.terms) {
            Subset i_part, j1, j2;
            std::set_intersection(t.s.begin(), t.s.end(), t.t.begin(), t.t.end(),
                                  std::back_inserter(i_part));
            std::set_difference(t.s.begin(), t.s.end(), t.t.begin(), t.t.end(),
                                std::back_inserter(j1));
            std::set_difference(t.t.begin(), t.t.end(), t.s.begin(), t.s.end(),
                                std::back_inserter(j2));
            terms.push_back({{"I", i_part}, {"J1", j1}, {"J2", j2}, {"c", to_string(t.c)}});
        }
        basis.push_back({{"degree", ev.d}, {"terms", terms}});
    }
    j["basis"] = basis;
    if (!cert.squares.empty()) {
        json squares = json::array();
        for (std::size_t i = 0; i < cert.squares.size(); ++i) {
            json row = json::array();
            for (const auto& q : cert.squares[i]) row.push_back(to_string(q));
            squares.push_back({{"weight", to_string(cert.square_weights[i])}, {"coeffs", row}});
        }
        j["squares"] = squares;
    }
    return j;
}

inline Certificate certificate_from_json(const json& j) {
    Certificate cert;
    cert.kind = j.at("kind").get<std::string>();
    cert.n = j.at("n").get<int>();
    cert.d = j.at("d").get<int>();
    const json& a = j.at("target").at("A");
    cert.a = RatMatrix(a.size(), a.size());
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a[r].size(); ++c)
            cert.a(r, c) = parse_rational(a[r][c].get<std::string>());
    const json& gram = j.at("gram");
    cert.gram = RatMatrix(gram.size(), gram.size());
    for (std::size_t r = 0; r < gram.size(); ++r)
        for (std::size_t c = 0; c < gram[r].size(); ++c)
            cert.gram(r, c) = parse_rational(gram[r][c].get<std::string>());
    if (j.contains("scale")) cert.scale = parse_rational(j.at("scale").get<std::string>());
    for (const auto& bj : j.at("basis")) {
        MinorEvaluator ev;
        ev.n = cert.n;
        ev.d = bj.at("degree").get<int>();
        for (const auto& tj : bj.at("terms")) {
            MinorTerm t;
            Subset i_part = tj.at("I").get<Subset>();
            Subset j1 = tj.at("J1").get<Subset>();
            Subset j2 = tj.at("J2").get<Subset>();
            t.s = set_union(i_part, j1);
            t.t = set_union(i_part, j2);
            t.c = parse_rational(tj.at("c").get<std::string>());
            ev.terms.push_back(std::move(t));
        }
        cert.basis.push_back(std::move(ev));
    }
    if (j.contains("squares")) {
        for (const auto& sj : j.at("squares")) {
            cert.square_weights.push_back(parse_rational(sj.at("weight").get<std::string>()));
            std::vector<Rational> row;
            for (const auto& q : sj.at("coeffs")) row.push_back(parse_rational(q.get<std::string>()));
            cert.squares.push_back(std::move(row));
        }
    }
    return cert;
}

inline void save_certificate(const Certificate& cert, const std::string& path) {
    write_text_file(path, certificate_to_json(cert).dump(2) + "\n");
}

inline Certificate load_certificate(const std::string& path) {
    return certificate_from_json(json::parse(read_text_file(path)));
}

}  // namespace hypercone
