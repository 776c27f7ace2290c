#include <json.hpp>

#include <sstream>

#include "pathlab/graph.hpp"

namespace pathlab {

namespace {

using json = nlohmann::json;

constexpr int kG6Offset = 63;

struct BitReader {
    const std::string& s;
    std::size_t pos;       // byte position
    int bit = 0;           // next bit within current byte, 0..5
    std::size_t line_no;

    int next() {
        if (pos >= s.size()) throw MalformedGraph6("truncated bit stream", line_no);
        int c = static_cast<unsigned char>(s[pos]) - kG6Offset;
        if (c < 0 || c > 63) throw MalformedGraph6("byte out of graph6 range", line_no);
        int b = (c >> (5 - bit)) & 1;
        if (++bit == 6) { bit = 0; ++pos; }
        return b;
    }
};

int decode_size(const std::string& line, std::size_t& pos, std::size_t line_no) {
    auto val = [&](std::size_t i) {
        int c = static_cast<unsigned char>(line[i]) - kG6Offset;
        if (c < 0 || c > 63) throw MalformedGraph6("bad header byte", line_no);
        return c;
    };
    if (line.empty()) throw MalformedGraph6("empty line", line_no);
    if (line[0] != '~') {
        pos = 1;
        return val(0);
    }
    if (line.size() >= 2 && line[1] == '~')
        throw MalformedGraph6("8-byte size form not supported", line_no);
    if (line.size() < 4) throw MalformedGraph6("truncated extended size", line_no);
    pos = 4;
    return (val(1) << 12) | (val(2) << 6) | val(3);
}

}  // namespace

std::vector<Graph> parse_graph6(const std::string& bytes) {
    std::vector<Graph> out;
    std::istringstream in(bytes);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind(">>graph6<<", 0) == 0) line = line.substr(10);
        std::size_t pos = 0;
        int n = decode_size(line, pos, line_no);
        BitReader bits{line, pos, 0, line_no};
        std::vector<std::pair<int, int>> edges;
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i)
                if (bits.next()) edges.emplace_back(i, j);
        Graph g = Graph::from_edges(n, edges, "g6_" + std::to_string(line_no));
        out.push_back(std::move(g));
    }
    return out;
}

std::string encode_graph6(const Graph& g) {
    std::string out;
    int n = g.num_nodes;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kG6Offset));
    } else if (n <= 258047) {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + kG6Offset));
        out.push_back(static_cast<char>(((n >> 6) & 63) + kG6Offset));
        out.push_back(static_cast<char>((n & 63) + kG6Offset));
    } else {
        throw InvalidParams("graph too large for graph6 encoding");
    }
    int acc = 0, nbits = 0;
    auto push_bit = [&](int b) {
        acc = (acc << 1) | b;
        if (++nbits == 6) {
            out.push_back(static_cast<char>(acc + kG6Offset));
            acc = 0;
            nbits = 0;
        }
    };
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) push_bit(g.has_edge(i, j) ? 1 : 0);
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + kG6Offset));
    return out;
}

// --- JSONL ----------------------------------------------------------------

Dataset parse_jsonl_dataset(const std::string& bytes) {
    Dataset ds;
    ds.name = "jsonl";
    std::istringstream in(bytes);
    std::string line;
    std::size_t line_no = 0;
    bool any_label = false;
    bool integral_labels = true;
    double max_label = -1.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw SchemaError("line " + std::to_string(line_no) + ": " + e.what());
        }
        try {
            if (!j.contains("id") || !j.contains("num_nodes") || !j.contains("edges"))
                throw SchemaError("missing required field (id, num_nodes, edges)");
            int n = j.at("num_nodes").get<int>();
            std::vector<std::pair<int, int>> edges;
            for (const auto& e : j.at("edges")) {
                if (!e.is_array() || e.size() != 2) throw SchemaError("edge is not a pair");
                edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
            Graph g = Graph::from_edges(n, edges, j.at("id").get<std::string>());
            if (j.contains("node_feat")) {
                auto nf = j.at("node_feat").get<std::vector<std::vector<double>>>();
                if (static_cast<int>(nf.size()) != n)
                    throw SchemaError("node_feat size != num_nodes");
                g.node_features = std::move(nf);
            }
            if (j.contains("edge_feat")) {
                auto ef = j.at("edge_feat").get<std::vector<std::vector<double>>>();
                if (ef.size() != edges.size())
                    throw SchemaError("edge_feat size != number of edges");
                for (std::size_t i = 0; i < edges.size(); ++i) {
                    auto key = std::minmax(edges[i].first, edges[i].second);
                    g.edge_features[{key.first, key.second}] = ef[i];
                }
            }
            if (j.contains("label")) {
                double lab = j.at("label").get<double>();
                g.label = lab;
                any_label = true;
                if (lab != static_cast<double>(static_cast<long long>(lab)) || lab < 0)
                    integral_labels = false;
                max_label = std::max(max_label, lab);
            }
            g.validate();
            ds.graphs.push_back(std::move(g));
        } catch (const SchemaError& e) {
            throw SchemaError("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const json::exception& e) {
            throw SchemaError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (any_label) {
        if (integral_labels) {
            ds.task = Task::Classification;
            ds.num_classes = static_cast<int>(max_label) + 1;
        } else {
            ds.task = Task::Regression;
        }
    }
    return ds;
}

std::string write_jsonl_dataset(const Dataset& ds) {
    std::ostringstream out;
    for (const Graph& g : ds.graphs) {
        json j;
        j["id"] = g.id;
        j["num_nodes"] = g.num_nodes;
        json edges = json::array();
        json efeat = json::array();
        for (auto [u, v] : g.edges()) {
            edges.push_back({u, v});
            auto it = g.edge_features.find({u, v});
            if (it != g.edge_features.end()) efeat.push_back(it->second);
        }
        j["edges"] = std::move(edges);
        if (g.node_features) j["node_feat"] = *g.node_features;
        if (!g.edge_features.empty()) j["edge_feat"] = std::move(efeat);
        if (g.label) j["label"] = *g.label;
        out << j.dump() << '\n';
    }
    return out.str();
}

}  // namespace pathlab
