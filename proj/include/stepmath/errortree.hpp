#pragma once

// Error chains and the error forest built from them.
//
// A chain lists erroneous step indices in increasing order, e.g. "(3)-(4)-(6)".
// Chains are merged so that each step index owns exactly one node; the node of
// the latest step in a chain is the parent of the previous one. Roots are
// therefore terminal errors and edges point back toward where an error began.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stepmath/core.hpp"
#include "stepmath/errors.hpp"
#include "stepmath/text.hpp"

namespace stepmath {

struct ErrorChain {
    std::vector<int> indices;

    friend bool operator==(const ErrorChain&, const ErrorChain&) = default;
};

struct ForestNode {
    int step = 0;
    std::vector<ForestNode> children;  // ascending by step

    friend bool operator==(const ForestNode&, const ForestNode&) = default;
};

struct ErrorForest {
    std::vector<ForestNode> roots;  // ascending by step

    std::size_t node_count() const {
        std::size_t n = 0;
        visit([&](const ForestNode&, const ForestNode*) { ++n; });
        return n;
    }
    std::size_t edge_count() const { return node_count() - roots.size(); }
    bool empty() const { return roots.empty(); }

    /// Pre-order walk; the callback receives each node and its parent (nullptr for roots).
    template <typename F>
    void visit(F&& f) const {
        for (const auto& r : roots) visit_node(r, nullptr, f);
    }

    friend bool operator==(const ErrorForest&, const ErrorForest&) = default;

private:
    template <typename F>
    static void visit_node(const ForestNode& node, const ForestNode* parent, F& f) {
        f(node, parent);
        for (const auto& c : node.children) visit_node(c, &node, f);
    }
};

struct ForestBuild {
    ErrorForest forest;
    std::vector<std::string> diagnostics;
};

// ---------------------------------------------------------------------------
// Parsing and rendering
// ---------------------------------------------------------------------------

inline std::string render_chain(const ErrorChain& chain) {
    std::string out;
    for (std::size_t i = 0; i < chain.indices.size(); ++i) {
        if (i) out += '-';
        out += '(' + std::to_string(chain.indices[i]) + ')';
    }
    return out;
}

/// Canonical text form: "(3)-(4)-(6), (5)-(6)".
inline std::string render_chains(const std::vector<ErrorChain>& chains) {
    std::string out;
    for (std::size_t i = 0; i < chains.size(); ++i) {
        if (i) out += ", ";
        out += render_chain(chains[i]);
    }
    return out;
}

namespace detail {

inline ErrorChain parse_one_chain(std::string_view raw) {
    const std::string shown(text::trim(raw));
    auto fail = [&](const std::string& why) -> ParseError {
        return ParseError("malformed error chain '" + shown + "': " + why);
    };

    ErrorChain chain;
    std::size_t i = 0;
    const std::string_view s = text::trim(raw);
    auto skip_ws = [&] {
        while (i < s.size() && text::is_ascii_space(s[i])) ++i;
    };
    bool expect_step = true;
    while (true) {
        skip_ws();
        if (i >= s.size()) break;
        if (!expect_step) {
            if (s[i] != '-') throw fail("expected '-' between steps");
            ++i;
            expect_step = true;
            continue;
        }
        if (s[i] != '(') throw fail("expected '('");
        ++i;
        skip_ws();
        const std::size_t begin = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == begin) throw fail("step index is not an integer");
        if (i - begin > 6) throw fail("step index too large");
        const int value = std::stoi(std::string(s.substr(begin, i - begin)));
        skip_ws();
        if (i >= s.size() || s[i] != ')') throw fail("expected ')'");
        ++i;
        if (value < 1) throw fail("step indices start at 1");
        if (!chain.indices.empty() && value <= chain.indices.back()) {
            throw fail("step indices must be strictly increasing");
        }
        chain.indices.push_back(value);
        expect_step = false;
    }
    if (expect_step) throw fail(chain.indices.empty() ? "empty chain" : "dangling '-'");
    return chain;
}

}  // namespace detail

/// Parses comma-separated chains. Full-width parentheses, commas and hyphens
/// are accepted; blank text yields no chains.
inline std::vector<ErrorChain> parse_chains(std::string_view input) {
    std::string normalized;
    for (std::size_t i = 0; i < input.size();) {
        char32_t cp = text::to_half_width(text::next_code_point(input, i));
        if (cp == U'、') cp = U',';
        text::append_utf8(normalized, cp);
    }

    std::vector<ErrorChain> chains;
    std::string_view rest = normalized;
    while (true) {
        const auto comma = rest.find(',');
        const auto piece = rest.substr(0, comma);
        if (!text::trim(piece).empty()) chains.push_back(detail::parse_one_chain(piece));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return chains;
}

// ---------------------------------------------------------------------------
// Forest construction
// ---------------------------------------------------------------------------

/// Merges chains into a forest with one node per step index. When two chains
/// disagree about which step follows an index, the first chain's edge is kept
/// and a diagnostic names the conflict.
inline ForestBuild build_forest(const std::vector<ErrorChain>& chains) {
    ForestBuild out;
    std::set<int> nodes;
    std::map<int, int> successor;

    for (const auto& chain : chains) {
        for (std::size_t k = 0; k < chain.indices.size(); ++k) {
            nodes.insert(chain.indices[k]);
            if (k + 1 == chain.indices.size()) break;
            const int from = chain.indices[k];
            const int to = chain.indices[k + 1];
            auto [it, inserted] = successor.emplace(from, to);
            if (!inserted && it->second != to) {
                out.diagnostics.push_back("chain " + render_chain(chain) + ": step " +
                                          std::to_string(from) + " already leads to step " +
                                          std::to_string(it->second) + ", edge to step " +
                                          std::to_string(to) + " dropped");
            }
        }
    }

    std::map<int, std::vector<int>> children;
    std::vector<int> roots;
    for (int n : nodes) {
        auto it = successor.find(n);
        if (it == successor.end()) {
            roots.push_back(n);
        } else {
            children[it->second].push_back(n);  // ascending since nodes iterate in order
        }
    }

    auto make = [&](auto&& self, int step) -> ForestNode {
        ForestNode node{step, {}};
        if (auto it = children.find(step); it != children.end()) {
            for (int c : it->second) node.children.push_back(self(self, c));
        }
        return node;
    };
    for (int r : roots) out.forest.roots.push_back(make(make, r));
    return out;
}

/// Every path from a leaf up to its root, as increasing step sequences.
inline std::vector<std::vector<int>> leaf_to_root_paths(const ErrorForest& forest) {
    std::vector<std::vector<int>> paths;
    std::vector<int> stack;
    auto walk = [&](auto&& self, const ForestNode& node) -> void {
        stack.push_back(node.step);
        if (node.children.empty()) {
            paths.emplace_back(stack.rbegin(), stack.rend());
        }
        for (const auto& c : node.children) self(self, c);
        stack.pop_back();
    };
    for (const auto& r : forest.roots) walk(walk, r);
    return paths;
}

// ---------------------------------------------------------------------------
// Consistency with step labels
// ---------------------------------------------------------------------------

/// Advisory checks: chain steps that are labelled Correct or out of range,
/// and zero-scored steps that no chain covers.
inline std::vector<std::string> validate_against_labels(const std::vector<ErrorChain>& chains,
                                                        const ScoredSolution& scored) {
    std::vector<std::string> diagnostics;
    const int n = static_cast<int>(scored.steps.size());
    std::set<int> covered;
    std::set<int> reported;
    for (const auto& chain : chains) {
        for (int idx : chain.indices) {
            covered.insert(idx);
            if (!reported.insert(idx).second) continue;
            if (idx > n) {
                diagnostics.push_back("chain step " + std::to_string(idx) +
                                      " exceeds step count " + std::to_string(n));
            } else if (scored.steps[idx - 1].label == StepLabel::Correct) {
                diagnostics.push_back("chain step " + std::to_string(idx) +
                                      " is labelled correct");
            }
        }
    }
    for (const auto& step : scored.steps) {
        if (step_score(step.label) == 0 && !covered.contains(step.index)) {
            diagnostics.push_back("step " + std::to_string(step.index) +
                                  " scored 0 but appears in no error chain");
        }
    }
    return diagnostics;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

namespace detail {

inline std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

}  // namespace detail

/// Graphviz DOT. Nodes appear in pre-order, children ascending. When step texts
/// are supplied, labels carry a truncated copy of the step text.
inline std::string export_dot(const ErrorForest& forest,
                              const std::map<int, std::string>& step_texts = {},
                              std::size_t max_label_chars = 40) {
    std::ostringstream nodes;
    std::ostringstream edges;
    forest.visit([&](const ForestNode& node, const ForestNode* parent) {
        std::string label = "(" + std::to_string(node.step) + ")";
        if (auto it = step_texts.find(node.step); it != step_texts.end()) {
            label += " " + text::truncate(text::trim(it->second), max_label_chars);
        }
        nodes << "  s" << node.step << " [label=\"" << detail::dot_escape(label) << "\"];\n";
        if (parent) edges << "  s" << parent->step << " -> s" << node.step << ";\n";
    });
    std::ostringstream out;
    out << "digraph error_tree {\n  node [shape=box];\n" << nodes.str() << edges.str() << "}\n";
    return out.str();
}

inline nlohmann::json to_json(const ForestNode& node) {
    nlohmann::json children = nlohmann::json::array();
    for (const auto& c : node.children) children.push_back(to_json(c));
    return {{"step", node.step}, {"children", std::move(children)}};
}

inline nlohmann::json to_json(const ErrorForest& forest) {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : forest.roots) roots.push_back(to_json(r));
    return {{"roots", std::move(roots)}};
}

inline std::string export_json(const ErrorForest& forest) { return to_json(forest).dump(); }

inline ForestNode forest_node_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("step") || !j.at("step").is_number_integer()) {
        throw ParseError("forest node needs an integer 'step'");
    }
    ForestNode node{j.at("step").get<int>(), {}};
    if (j.contains("children")) {
        for (const auto& c : j.at("children")) node.children.push_back(forest_node_from_json(c));
    }
    return node;
}

inline ErrorForest forest_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("roots") || !j.at("roots").is_array()) {
        throw ParseError("forest document needs a 'roots' array");
    }
    ErrorForest forest;
    for (const auto& r : j.at("roots")) forest.roots.push_back(forest_node_from_json(r));
    return forest;
}

inline ErrorForest import_json(std::string_view text) {
    try {
        return forest_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid forest JSON: ") + e.what());
    }
}

}  // namespace stepmath
