#include "isored/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "isored/errors.hpp"
#include "isored/weights.hpp"

namespace isored {

namespace {

using json = nlohmann::ordered_json;

json read_document(const std::string& path, const char* expected_kind) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw BadDocument(path + ": " + e.what());
    }
    if (!doc.is_object()) throw BadDocument(path + ": top level must be an object");
    if (!doc.contains("format") || !doc["format"].is_number_integer() ||
        doc["format"].get<int>() != 1)
        throw BadDocument(path + ": unsupported or missing format version");
    if (!doc.contains("kind") || doc["kind"] != expected_kind)
        throw BadDocument(path + ": expected a document of kind '" +
                          std::string(expected_kind) + "'");
    return doc;
}

void write_document(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("cannot write " + path);
}

std::vector<std::string> get_labels(const json& doc, const std::string& path) {
    if (!doc.contains("labels") || !doc["labels"].is_array())
        throw BadDocument(path + ": missing label list");
    std::vector<std::string> labels;
    for (const auto& l : doc["labels"]) {
        if (!l.is_string()) throw BadDocument(path + ": labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    return labels;
}

int label_lookup(const std::vector<std::string>& labels, const json& v,
                 const std::string& path) {
    if (!v.is_string()) throw BadDocument(path + ": edge endpoints must be label strings");
    const std::string s = v.get<std::string>();
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == s) return static_cast<int>(i);
    throw BadDocument(path + ": unknown vertex label '" + s + "'");
}

json expr_to_json(const Expr& e) {
    json j;
    switch (e.kind) {
    case Expr::Kind::Var:
        j["kind"] = "var";
        j["index"] = e.var;
        break;
    case Expr::Kind::Identity:
        j["kind"] = "identity";
        j["arg"] = expr_to_json(*e.args[0]);
        break;
    case Expr::Kind::Affine:
        j["kind"] = "affine";
        j["a"] = e.a;
        j["b"] = e.b;
        j["arg"] = expr_to_json(*e.args[0]);
        break;
    case Expr::Kind::Poly:
        j["kind"] = "poly";
        j["coeffs"] = e.coeffs;
        j["arg"] = expr_to_json(*e.args[0]);
        break;
    case Expr::Kind::Named:
        j["kind"] = "named";
        j["name"] = e.name;
        j["arg"] = expr_to_json(*e.args[0]);
        break;
    case Expr::Kind::Sum:
        j["kind"] = "sum";
        j["weights"] = e.weights;
        j["bias"] = e.bias;
        j["args"] = json::array();
        for (const auto& a : e.args) j["args"].push_back(expr_to_json(*a));
        break;
    }
    return j;
}

ExprPtr expr_from_json(const json& j, int n, const std::string& path) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw BadDocument(path + ": every expression needs a string 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    auto arg = [&]() {
        if (!j.contains("arg")) throw BadDocument(path + ": '" + kind + "' needs an 'arg'");
        return expr_from_json(j["arg"], n, path);
    };
    if (kind == "var") {
        if (!j.contains("index") || !j["index"].is_number_integer())
            throw BadDocument(path + ": 'var' needs an integer 'index'");
        const int idx = j["index"].get<int>();
        if (idx < 0 || idx >= n)
            throw BadDocument(path + ": variable index " + std::to_string(idx) +
                              " out of range");
        return expr_var(idx);
    }
    if (kind == "identity") return expr_identity(arg());
    if (kind == "affine") {
        if (!j.contains("a") || !j.contains("b"))
            throw BadDocument(path + ": 'affine' needs 'a' and 'b'");
        return expr_affine(j["a"].get<double>(), j["b"].get<double>(), arg());
    }
    if (kind == "poly") {
        if (!j.contains("coeffs") || !j["coeffs"].is_array())
            throw BadDocument(path + ": 'poly' needs a coefficient list");
        return expr_poly(j["coeffs"].get<std::vector<double>>(), arg());
    }
    if (kind == "named") {
        if (!j.contains("name") || !j["name"].is_string())
            throw BadDocument(path + ": 'named' needs a 'name'");
        return expr_named(j["name"].get<std::string>(), arg());
    }
    if (kind == "sum") {
        std::vector<double> weights;
        if (j.contains("weights")) weights = j["weights"].get<std::vector<double>>();
        const double bias = j.contains("bias") ? j["bias"].get<double>() : 0.0;
        std::vector<ExprPtr> args;
        if (j.contains("args"))
            for (const auto& a : j["args"]) args.push_back(expr_from_json(a, n, path));
        if (weights.size() != args.size())
            throw BadDocument(path + ": 'sum' weights and args disagree in length");
        return expr_sum(std::move(weights), bias, std::move(args));
    }
    throw BadDocument(path + ": unknown expression kind '" + kind + "'");
}

std::vector<std::vector<double>> get_matrix(const json& j, int n, const std::string& path,
                                            const char* field) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw BadDocument(path + ": '" + field + "' must be a " + std::to_string(n) + "x" +
                          std::to_string(n) + " matrix");
    std::vector<std::vector<double>> m;
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw BadDocument(path + ": '" + field + "' must be a " + std::to_string(n) +
                              "x" + std::to_string(n) + " matrix");
        m.push_back(row.get<std::vector<double>>());
    }
    return m;
}

} // namespace

WeightedDigraph load_graph(const std::string& path) {
    const json doc = read_document(path, "graph");
    const auto labels = get_labels(doc, path);
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw BadDocument(path + ": missing edge list");
    std::vector<Edge> edges;
    for (const auto& e : doc["edges"]) {
        if (!e.is_object() || !e.contains("from") || !e.contains("to") ||
            !e.contains("weight") || !e["weight"].is_string())
            throw BadDocument(path + ": each edge needs 'from', 'to' and a 'weight' string");
        edges.push_back({label_lookup(labels, e["from"], path),
                         label_lookup(labels, e["to"], path),
                         parse_weight(e["weight"].get<std::string>())});
    }
    return graph_build(labels, edges);
}

void save_graph(const std::string& path, const WeightedDigraph& g) {
    json doc;
    doc["format"] = 1;
    doc["kind"] = "graph";
    doc["labels"] = g.labels;
    doc["edges"] = json::array();
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (g.has_edge(i, j)) {
                json e;
                e["from"] = g.labels[i];
                e["to"] = g.labels[j];
                e["weight"] = format_weight(g.w[i][j]);
                doc["edges"].push_back(e);
            }
    write_document(path, doc);
}

InteractionNetwork load_network(const std::string& path) {
    const json doc = read_document(path, "network");
    InteractionNetwork f;
    f.labels = get_labels(doc, path);
    const int n = f.n();
    if (!doc.contains("box") || !doc["box"].is_array() ||
        static_cast<int>(doc["box"].size()) != n)
        throw BadDocument(path + ": 'box' must list one interval per coordinate");
    for (const auto& b : doc["box"]) {
        if (!b.is_array() || b.size() != 2)
            throw BadDocument(path + ": each interval is a [low, high] pair");
        const double lo = b[0].get<double>(), hi = b[1].get<double>();
        if (!(lo <= hi)) throw BadDocument(path + ": interval bounds out of order");
        f.box.emplace_back(lo, hi);
    }
    if (!doc.contains("components") || !doc["components"].is_array() ||
        static_cast<int>(doc["components"].size()) != n)
        throw BadDocument(path + ": 'components' must list one map per coordinate");
    for (const auto& c : doc["components"]) f.components.push_back(expr_from_json(c, n, path));
    if (doc.contains("lipschitz"))
        f.declared_lipschitz = get_matrix(doc["lipschitz"], n, path, "lipschitz");
    if (doc.contains("local_maps")) {
        if (!doc["local_maps"].is_array() || static_cast<int>(doc["local_maps"].size()) != n)
            throw BadDocument(path + ": 'local_maps' must list one map per coordinate");
        for (const auto& m : doc["local_maps"]) {
            if (!m.is_object() || !m.contains("expr"))
                throw BadDocument(path + ": each local map needs an 'expr'");
            LocalMap lm;
            lm.map = expr_from_json(m["expr"], n, path);
            if (m.contains("lipschitz")) lm.lipschitz = m["lipschitz"].get<double>();
            f.local_maps.push_back(std::move(lm));
        }
    }
    return f;
}

void save_network(const std::string& path, const InteractionNetwork& f) {
    json doc;
    doc["format"] = 1;
    doc["kind"] = "network";
    doc["labels"] = f.labels;
    doc["box"] = json::array();
    for (const auto& [lo, hi] : f.box) doc["box"].push_back(json::array({lo, hi}));
    doc["components"] = json::array();
    for (const auto& c : f.components) doc["components"].push_back(expr_to_json(*c));
    if (f.declared_lipschitz) {
        doc["lipschitz"] = json::array();
        for (const auto& row : *f.declared_lipschitz) doc["lipschitz"].push_back(row);
    }
    if (!f.local_maps.empty()) {
        doc["local_maps"] = json::array();
        for (const auto& m : f.local_maps) {
            json lm;
            lm["expr"] = expr_to_json(*m.map);
            lm["lipschitz"] = m.lipschitz;
            doc["local_maps"].push_back(lm);
        }
    }
    write_document(path, doc);
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string to_dot(const WeightedDigraph& g, const VertexSet& mark) {
    std::ostringstream out;
    out << "digraph G {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    for (int i = 0; i < g.n(); ++i) {
        out << "  \"" << dot_escape(g.labels[i]) << "\"";
        if (mark.contains(i)) out << " [shape=doublecircle]";
        out << ";\n";
    }
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            if (g.has_edge(i, j))
                out << "  \"" << dot_escape(g.labels[i]) << "\" -> \""
                    << dot_escape(g.labels[j]) << "\" [label=\""
                    << dot_escape(format_weight(g.w[i][j])) << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string to_dot(const WeightedDigraph& g) { return to_dot(g, VertexSet{}); }

} // namespace isored
