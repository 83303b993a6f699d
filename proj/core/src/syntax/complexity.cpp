#include "formaltrip/syntax/complexity.hpp"

#include <string>

#include "formaltrip/common/error.hpp"

namespace formaltrip::syntax {

namespace {

void count(const PropFormula& f, ComplexityProfile& p) {
  switch (f.kind) {
    case PropFormula::Kind::Proposition: return;
    case PropFormula::Kind::Not: ++p.not_count; break;
    case PropFormula::Kind::And: p.and_count += f.children.size() - 1; break;
    case PropFormula::Kind::Or: p.or_count += f.children.size() - 1; break;
  }
  for (const auto& c : f.children) count(c, p);
}

void count(const FolNode& n, ComplexityProfile& p) {
  switch (n.kind) {
    case FolNode::Kind::Atom: return;
    case FolNode::Kind::Not: ++p.not_count; break;
    case FolNode::Kind::And: p.and_count += n.children.size() - 1; break;
    case FolNode::Kind::Or: p.or_count += n.children.size() - 1; break;
    default: break;
  }
  for (const auto& c : n.children) count(c, p);
}

void count(const RegexAst& r, ComplexityProfile& p) {
  if (r.kind == RegexAst::Kind::Star) ++p.star_count;
  for (const auto& c : r.children) count(c, p);
}

}  // namespace

ComplexityProfile complexity(const FormalExpression& e) {
  ComplexityProfile p;
  switch (e.formalism) {
    case Formalism::Prop:
      count(e.prop(), p);
      p.operator_total = p.and_count + p.or_count + p.not_count;
      break;
    case Formalism::Fol:
      count(e.fol().matrix, p);
      p.operator_total = p.and_count + p.or_count + p.not_count;
      break;
    case Formalism::Regex:
      count(e.regex(), p);
      p.operator_total = p.star_count;
      break;
  }
  return p;
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::OperatorTotal: return "operator_total";
    case Metric::CfgDepth: return "cfg_depth";
    case Metric::AndCount: return "and_count";
    case Metric::OrCount: return "or_count";
    case Metric::NotCount: return "not_count";
    case Metric::DfaNodes: return "dfa_nodes";
    case Metric::DfaEdges: return "dfa_edges";
    case Metric::DfaDensity: return "dfa_density";
  }
  return "?";
}

Metric metric_from_string(std::string_view s) {
  if (s == "operator_total" || s == "operators") return Metric::OperatorTotal;
  if (s == "cfg_depth" || s == "depth") return Metric::CfgDepth;
  if (s == "and_count" || s == "and") return Metric::AndCount;
  if (s == "or_count" || s == "or") return Metric::OrCount;
  if (s == "not_count" || s == "not") return Metric::NotCount;
  if (s == "dfa_nodes") return Metric::DfaNodes;
  if (s == "dfa_edges") return Metric::DfaEdges;
  if (s == "dfa_density") return Metric::DfaDensity;
  throw ConfigError("unknown categorization metric '" + std::string(s) + "'");
}

bool metric_needs_dfa(Metric m) {
  return m == Metric::DfaNodes || m == Metric::DfaEdges || m == Metric::DfaDensity;
}

double metric_value(const ComplexityProfile& p, Metric m) {
  auto need = [m](const auto& opt) {
    if (!opt) throw Error("metric " + std::string(to_string(m)) + " is not available");
    return static_cast<double>(*opt);
  };
  switch (m) {
    case Metric::OperatorTotal: return static_cast<double>(p.operator_total);
    case Metric::AndCount: return static_cast<double>(p.and_count);
    case Metric::OrCount: return static_cast<double>(p.or_count);
    case Metric::NotCount: return static_cast<double>(p.not_count);
    case Metric::CfgDepth: return need(p.cfg_depth);
    case Metric::DfaNodes: return need(p.dfa_nodes);
    case Metric::DfaEdges: return need(p.dfa_edges);
    case Metric::DfaDensity: return need(p.dfa_density);
  }
  return 0.0;
}

}  // namespace formaltrip::syntax
