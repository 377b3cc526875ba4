#include "glin/prompts.hpp"

#include <algorithm>

namespace glin {

std::string_view to_string(Shots shots) { return shots == Shots::Zero ? "zero" : "one"; }

Shots parse_shots(std::string_view name) {
  if (name == "zero") return Shots::Zero;
  if (name == "one") return Shots::One;
  throw std::invalid_argument("unknown shot mode: " + std::string(name));
}

std::string_view motif_definition(MotifKind kind) {
  switch (kind) {
    case MotifKind::Clique:
      return "a group of nodes in which every pair of nodes is connected by an edge.";
    case MotifKind::Star:
      return "one central node connected to every other node of the group, with no edges among the "
             "other nodes.";
    case MotifKind::Fan:
      return "a path of nodes plus one apex node that is connected to every node of the path.";
    case MotifKind::Diamond:
      return "six nodes where four nodes form a cycle and each of the two remaining nodes is "
             "connected to all four nodes of the cycle.";
    case MotifKind::Tree:
      return "a perfect binary tree, where every internal node has exactly two children and all "
             "leaves are at the same depth.";
  }
  return "";
}

namespace {

constexpr std::string_view kEdgeMeaning =
    "In an undirected graph, (i, j) means that node i and node j are connected with an undirected edge.";
constexpr std::string_view kDegreeMeaning = "The degree of a node is the number of edges connected to the node.";
constexpr std::string_view kRespond = "Given a graph G and its list of edges, respond to the following question:";

std::string label(const LinearizedGraph& lg, NodeId original) {
  return std::to_string(lg.label_of(original));
}

}  // namespace

std::string render_question(const TaskInstance& inst, const LinearizedGraph& lg) {
  const std::string graph = render_edge_list(lg);
  std::string out;
  switch (inst.kind) {
    case TaskKind::NodeCounting:
      out = "In an undirected graph G, (i, j) means that node i and node j are connected with an "
            "undirected edge.\nQ: How many nodes are in G?\nG: " + graph;
      break;
    case TaskKind::MaxDegree:
      out = std::string(kEdgeMeaning) + " " + std::string(kDegreeMeaning) + " " + std::string(kRespond) +
            "\nQ: Without any justification, what is the maximum node degree in the following graph G?\nG: " +
            graph;
      break;
    case TaskKind::NodeDegree:
      out = std::string(kEdgeMeaning) + " " + std::string(kDegreeMeaning) + " " + std::string(kRespond) +
            "\nQ: Without any justification, what is the degree of node " + label(lg, inst.params.at(0)) +
            " in the following graph G?\nG: " + graph;
      break;
    case TaskKind::EdgeExistence:
      out = std::string(kEdgeMeaning) + " " + std::string(kRespond) + "\nQ: Does an undirected edge (" +
            label(lg, inst.params.at(0)) + ", " + label(lg, inst.params.at(1)) +
            ") exist in the following graph G?.\nG: " + graph;
      break;
    case TaskKind::Diameter:
      out = std::string(kEdgeMeaning) +
            " The diameter of a graph is the length of the shortest path between the most distanced "
            "nodes. " +
            std::string(kRespond) + "\nQ: Without any justification, what is the diameter of the following graph G?\nG: " +
            graph;
      break;
    case TaskKind::ShortestPath:
      out = std::string(kEdgeMeaning) + " " + std::string(kRespond) +
            "\nQ: Without any justification, what is the length of the shortest path from node " +
            label(lg, inst.params.at(0)) + " to node " + label(lg, inst.params.at(1)) +
            "? If no path exists, the response is '0'.\nG: " + graph;
      break;
    case TaskKind::PathExistence:
      out = std::string(kEdgeMeaning) + " " + std::string(kRespond) +
            "\nQ: Does a path that connects node " + label(lg, inst.params.at(0)) + " and " +
            label(lg, inst.params.at(1)) + " exist in the following graph G?\nG: " + graph;
      break;
    case TaskKind::MotifShape: {
      out = std::string(kEdgeMeaning) +
            " The graph contains a motif graph with strictly one of the following structures.";
      for (const MotifKind kind : kAllMotifKinds) {
        out += ' ';
        out += to_string(kind);
        out += ": ";
        out += motif_definition(kind);
      }
      out += "\nQ: Which of the defined structures is included in the following graph?\ngraph: " + graph;
      break;
    }
  }
  return out;
}

PromptRecord render_prompt(const TaskInstance& inst, const LinearizedGraph& lg, Shots shots,
                           const std::optional<Exemplar>& exemplar) {
  if (shots == Shots::One && !exemplar) {
    throw PromptError(PromptError::Code::MissingExemplar, "one-shot prompt without an exemplar");
  }
  if (shots == Shots::Zero && exemplar) {
    throw PromptError(PromptError::Code::MissingExemplar, "zero-shot prompt given an exemplar");
  }
  if (exemplar) {
    if (exemplar->instance.kind != inst.kind) {
      throw PromptError(PromptError::Code::KindMismatch, "exemplar asks " +
                                                             std::string(to_string(exemplar->instance.kind)) +
                                                             ", query asks " + std::string(to_string(inst.kind)));
    }
    if (exemplar->instance.graph_ref == inst.graph_ref) {
      throw PromptError(PromptError::Code::KindMismatch, "exemplar graph is the query graph " + inst.graph_ref);
    }
  }

  PromptRecord rec;
  rec.task = inst.kind;
  rec.shots = shots;
  rec.instance_ref = inst.graph_ref;
  rec.reference_answer = answer_text(inst.truth);
  rec.node_count = lg.labels.size();
  rec.token_estimate = estimate_tokens(lg);

  const std::string question = render_question(inst, lg);
  if (exemplar) {
    rec.exemplar_ref = exemplar->instance.graph_ref;
    rec.token_estimate += estimate_tokens(exemplar->graph);
    rec.text = "Example:\n" + render_question(exemplar->instance, exemplar->graph) +
               "\nAnswer: " + answer_text(exemplar->instance.truth) + "\n\n" + question;
  } else {
    rec.text = question;
  }
  return rec;
}

std::size_t estimate_tokens_for_edges(std::size_t edges) {
  return kTaskDescriptionTokens + kTokensPerEdge * edges;
}

std::size_t estimate_tokens(const LinearizedGraph& lg) {
  return estimate_tokens_for_edges(lg.edge_sequence.size());
}

std::size_t edge_capacity(std::size_t context_window) {
  if (context_window < kTaskDescriptionTokens) return 0;
  return (context_window - kTaskDescriptionTokens) / kTokensPerEdge;
}

}  // namespace glin
