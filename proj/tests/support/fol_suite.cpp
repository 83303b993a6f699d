#include "fol_suite.hpp"

namespace suite {

const std::vector<FolCase>& fol_cases() {
  static const std::vector<FolCase> cases = {
      {"∀x. (pred1(x) ∧ pred3(x))", "(∀x. pred1(x)) ∧ (∀x. pred3(x))", true},
      {"∃x. (pred1(x) ∨ pred3(x))", "(∃x. pred1(x)) ∨ (∃x. pred3(x))", true},
      {"¬(∀x. pred1(x))", "∃y. ¬pred1(y)", true},
      {"¬(∃x. pred1(x))", "∀x. ¬pred1(x)", true},
      {"∀x. ∀y. pred2(x, y)", "∀y. ∀x. pred2(x, y)", true},
      {"∃x. ∃y. pred2(x, y)", "∃y. ∃x. pred2(x, y)", true},
      {"∀x. (pred1(x) ∨ pred3(a))", "(∀x. pred1(x)) ∨ pred3(a)", true},
      {"∃x. (pred1(x) ∧ pred3(a))", "(∃x. pred1(x)) ∧ pred3(a)", true},
      {"∀x. pred1(x)", "∀y. pred1(y)", true},
      {"¬¬pred1(a)", "pred1(a)", true},
      {"∀x. ¬¬pred1(x)", "∀x. pred1(x)", true},
      {"pred1(a) ∧ (pred1(a) ∨ pred3(b))", "pred1(a)", true},
      {"∃x. (pred1(x) ∧ (∀y. pred2(x, y)))", "∃x. ∀y. (pred1(x) ∧ pred2(x, y))", true},
      {"(∀x. pred1(x)) ∧ pred1(a)", "∀x. pred1(x)", true},
      {"(∃x. pred1(x)) ∨ pred1(a)", "∃x. pred1(x)", true},
      {"∀x. (pred1(x) ∧ pred3(x))", "∀x. (pred3(x) ∧ pred1(x))", true},
      {"(∀x. (¬pred1(x) ∨ pred3(x))) ∧ (∀x. pred1(x))", "∀x. (pred1(x) ∧ pred3(x))", true},
      {"¬((∀x. pred1(x)) ∧ (∃y. pred3(y)))", "(∃x. ¬pred1(x)) ∨ (∀y. ¬pred3(y))", true},
      {"∃x. (pred1(x) ∨ ¬pred1(x))", "∀y. (pred3(y) ∨ ¬pred3(y))", true},
      {"∀x. ∃y. (pred1(x) ∨ pred3(y))", "(∀x. pred1(x)) ∨ (∃y. pred3(y))", true},

      {"∀x. ∃y. pred2(x, y)", "∃y. ∀x. pred2(x, y)", false},
      {"∃x. (pred1(x) ∧ pred3(x))", "(∃x. pred1(x)) ∧ (∃x. pred3(x))", false},
      {"∀x. (pred1(x) ∨ pred3(x))", "(∀x. pred1(x)) ∨ (∀x. pred3(x))", false},
      {"pred1(a)", "pred1(b)", false},
      {"∃x. pred1(x)", "∀x. pred1(x)", false},
      {"∃x1. ¬pred2(p4)", "∃x1. ¬pred2(x1)", false},
      {"∀x1. ¬¬pred3(p5)", "∀x1. ¬(pred3(p5) ∨ ¬pred3(p5))", false},
      {"∃x1. ¬pred5(p7)", "∃p7. ¬pred5(p7)", false},
      {"¬pred8(p10) ∧ pred8(p5) ∧ pred6(p8)", "¬(pred8(p10) ∧ pred8(p5) ∧ pred6(p8))", false},
      {"∀x. pred2(x, x)", "∀x. ∀y. pred2(x, y)", false},
  };
  return cases;
}

}  // namespace suite
