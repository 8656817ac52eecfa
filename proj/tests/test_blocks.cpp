#include <doctest.h>

#include "gxw/blocks.hpp"
#include "gxw/errors.hpp"
#include "support/helpers.hpp"

using namespace gxw;
using namespace gxw::test;

namespace {

DnfClause cl(std::vector<Literal> lits) { return make_clause(std::move(lits)); }
Literal pos(int d, const std::string& v) { return {d, v, true, VarTag::Input}; }
Literal neg(int d, const std::string& v) { return {d, v, false, VarTag::Input}; }

std::vector<PortValue> run_machine(const MealyMachine& m,
                                   const std::vector<std::vector<bool>>& inputs) {
  std::vector<bool> st = m.initial_state();
  std::vector<PortValue> outs;
  for (const auto& in : inputs) {
    std::vector<PortValue> o;
    m.step(in, st, o);
    outs.push_back(o[0]);
  }
  return outs;
}

constexpr PortValue T = PortValue::True;
constexpr PortValue F = PortValue::False;
constexpr PortValue D = PortValue::Dash;

// Direct finite-trace statement of the phase controller property: out stays
// false until the first set; every set forces h false cycles; afterwards out
// mirrors in until the next set.
bool theta_property_holds(int h, const std::vector<bool>& set, const std::vector<bool>& in,
                          const std::vector<PortValue>& out) {
  int n = static_cast<int>(out.size());
  int last_set = -1;
  for (int t = 0; t < n; ++t) {
    if (set[t]) last_set = t;
    bool expect_false = last_set < 0 || t < last_set + h;
    PortValue expect =
        expect_false ? PortValue::False : (in[t] ? PortValue::True : PortValue::False);
    if (out[t] != expect) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("if-then block forwards true and leaves false unconstrained") {
  MealyMachine m = make_highlevel(ActorKind::IfTB, "f").machine.value();
  CHECK(run_machine(m, {{true}, {false}, {true}}) == std::vector<PortValue>{T, D, T});
}

TEST_CASE("initial-until block holds true until the event, then stays unconstrained") {
  MealyMachine m = make_highlevel(ActorKind::InUB, "f").machine.value();
  CHECK(run_machine(m, {{false}, {false}, {true}, {false}}) ==
        std::vector<PortValue>{T, T, D, D});
}

TEST_CASE("trigger-until block locks on input and releases on release") {
  MealyMachine m = make_highlevel(ActorKind::TrUB, "f").machine.value();
  // (input, release)
  CHECK(run_machine(m, {{true, false}, {false, false}, {false, true}, {false, false}}) ==
        std::vector<PortValue>{T, T, D, D});
  // release wins over a simultaneous trigger
  CHECK(run_machine(m, {{true, true}}) == std::vector<PortValue>{D});
  // re-triggering while locked keeps the lock
  CHECK(run_machine(m, {{true, false}, {true, false}, {false, false}}) ==
        std::vector<PortValue>{T, T, T});
}

TEST_CASE("trigger-until never outputs true in a release cycle") {
  MealyMachine m = make_highlevel(ActorKind::TrUB, "f").machine.value();
  for (const Trace& tr : all_traces({"i", "r"}, 5)) {
    std::vector<bool> st = m.initial_state();
    for (size_t t = 0; t < tr.length(); ++t) {
      std::vector<PortValue> o;
      m.step({tr.at(t, "i"), tr.at(t, "r")}, st, o);
      if (tr.at(t, "r")) CHECK(o[0] != PortValue::True);
    }
  }
}

TEST_CASE("high-level blocks carry at most one state bit") {
  for (ActorKind k : {ActorKind::IfTB, ActorKind::InUB, ActorKind::TrUB}) {
    MealyMachine m = make_highlevel(k, "x").machine.value();
    CHECK(m.num_bits() <= 1);
  }
}

TEST_CASE("monitor reproduces the two-variable window example") {
  // !in1 & X in1 & X in2 & XX !in2, inputs (F,F)(T,T)(T,F) -> F, F, T
  DnfClause c = cl({neg(0, "in1"), pos(1, "in1"), pos(1, "in2"), neg(2, "in2")});
  MealyMachine m = syn_monitor(c, 2);
  CHECK(run_machine(m, {{false, false}, {true, true}, {true, false}}) ==
        std::vector<PortValue>{F, F, T});
}

TEST_CASE("monitor with no history is combinational") {
  MealyMachine m = syn_monitor(cl({pos(0, "a")}), 0);
  CHECK(m.vars.empty());
  CHECK(run_machine(m, {{true}, {false}, {true}}) == std::vector<PortValue>{T, F, T});
}

TEST_CASE("rising edge monitor matches the direct window evaluation on all short traces") {
  DnfClause c = cl({neg(0, "a"), pos(1, "a")});
  MealyMachine m = syn_monitor(c, 1);
  for (const Trace& tr : all_traces({"a"}, 6)) {
    std::vector<bool> st = m.initial_state();
    for (size_t t = 0; t < tr.length(); ++t) {
      std::vector<PortValue> o;
      m.step({tr.at(t, "a")}, st, o);
      bool expect = t >= 1 && !tr.at(t - 1, "a") && tr.at(t, "a");
      CHECK(o[0] == (expect ? T : F));
    }
  }
}

TEST_CASE("monitor outputs match the window oracle for a clause catalog") {
  std::vector<std::pair<DnfClause, int>> catalog = {
      {cl({pos(0, "a")}), 1},                              // padded
      {cl({pos(1, "a")}), 1},                              // current-only literal
      {cl({neg(0, "a"), pos(1, "b")}), 1},                 //
      {cl({pos(0, "a"), neg(1, "b"), pos(2, "c")}), 2},    //
      {cl({neg(0, "a"), pos(2, "a")}), 2},                 //
      {cl({pos(0, "a"), pos(1, "a"), pos(2, "a")}), 2},    //
  };
  for (const auto& [c, i] : catalog) {
    MealyMachine m = syn_monitor(c, i);
    CHECK(m.three_valued_var_count() == i * static_cast<int>(c.vars().size()));
    std::vector<std::string> vars = c.vars();
    for (const Trace& tr : all_traces(vars, 6)) {
      std::vector<bool> st = m.initial_state();
      for (size_t t = 0; t < tr.length(); ++t) {
        std::vector<bool> in;
        for (const auto& v : vars) in.push_back(tr.at(t, v));
        std::vector<PortValue> o;
        m.step(in, st, o);
        bool expect = false;
        if (t >= static_cast<size_t>(i))
          expect = c.eval([&](int j, const std::string& v) { return tr.at(t - i + j, v); });
        CHECK(o[0] == (expect ? T : F));
      }
    }
  }
}

TEST_CASE("theta output follows its defining property on all short traces") {
  for (int h : {1, 2, 3}) {
    MealyMachine m = make_theta(h);
    for (const Trace& tr : all_traces({"set", "in"}, 8)) {
      std::vector<bool> st = m.initial_state();
      std::vector<bool> set, in;
      std::vector<PortValue> out;
      for (size_t t = 0; t < tr.length(); ++t) {
        set.push_back(tr.at(t, "set"));
        in.push_back(tr.at(t, "in"));
        std::vector<PortValue> o;
        m.step({set.back(), in.back()}, st, o);
        out.push_back(o[0]);
      }
      CHECK(theta_property_holds(h, set, in, out));
    }
  }
}

TEST_CASE("theta examples: masking, idle, restart") {
  MealyMachine th1 = make_theta(1);
  // set at cycle 2, in always true -> F F F T T
  CHECK(run_machine(th1, {{false, true}, {false, true}, {true, true}, {false, true},
                          {false, true}}) == std::vector<PortValue>{F, F, F, T, T});
  // no set ever -> false forever
  CHECK(run_machine(th1, {{false, true}, {false, true}, {false, true}}) ==
        std::vector<PortValue>{F, F, F});
  // h=2, sets at cycles 0 and 3 -> F F in2 F F in5
  MealyMachine th2 = make_theta(2);
  auto out = run_machine(th2, {{true, true}, {false, true}, {false, true}, {true, false},
                               {false, false}, {false, true}});
  CHECK(out == std::vector<PortValue>{F, F, T, F, F, T});

  CHECK_THROWS_AS(make_theta(0), InvalidHError);
}

TEST_CASE("iff monitor is unconstrained during warm-up and Boolean afterwards") {
  SUBCASE("depth zero never emits dash") {
    MealyMachine m = syn_p4_monitor(cl({pos(0, "a")}), 0);
    CHECK(run_machine(m, {{true}, {false}}) == std::vector<PortValue>{T, F});
  }
  SUBCASE("rising edge indicator after one dash cycle") {
    MealyMachine m = syn_p4_monitor(cl({neg(0, "a"), pos(1, "a")}), 1);
    for (const Trace& tr : all_traces({"a"}, 6)) {
      std::vector<bool> st = m.initial_state();
      for (size_t t = 0; t < tr.length(); ++t) {
        std::vector<PortValue> o;
        m.step({tr.at(t, "a")}, st, o);
        if (t == 0) {
          CHECK(o[0] == D);
        } else {
          bool expect = !tr.at(t - 1, "a") && tr.at(t, "a");
          CHECK(o[0] == (expect ? T : F));
        }
      }
    }
  }
}

TEST_CASE("resolution actor merges demands and is symmetric") {
  Actor res3 = make_res(3, "r");
  res3.res_param = false;
  ActorSystem sys;
  sys.ext_inputs = {};
  sys.ext_outputs = {};
  // exercise the merge rules through a direct fire helper: a tiny system
  // with three if-then blocks would be heavier than needed, so drive the
  // actor through step() with constant sources instead.
  auto fire = [](Actor a, std::vector<PortValue> ins) {
    ActorSystem s;
    for (size_t i = 0; i < ins.size(); ++i) {
      s.ext_inputs.push_back("x" + std::to_string(i));
    }
    s.ext_outputs = {"o"};
    // feed each input through an if-then block so dash can be produced
    int res_idx = static_cast<int>(ins.size());
    for (size_t i = 0; i < ins.size(); ++i) {
      s.actors.push_back(make_highlevel(ActorKind::IfTB, "f" + std::to_string(i)));
      s.wires.push_back({{-1, "x" + std::to_string(i)}, {static_cast<int>(i), "input"}});
    }
    s.actors.push_back(a);
    for (size_t i = 0; i < ins.size(); ++i) {
      // dash from if-then when its input is false; true when true. A false
      // demand is produced by a NOT gate behind the block.
      s.wires.push_back(
          {{static_cast<int>(i), "output"}, {res_idx, "input" + std::to_string(i + 1)}});
    }
    s.wires.push_back({{res_idx, "output"}, {-1, "o"}});
    std::map<std::string, bool> in;
    // inputs: True -> demand true; Dash -> no demand. (False demands need a
    // NOT actor; covered separately below.)
    for (size_t i = 0; i < ins.size(); ++i) in["x" + std::to_string(i)] = ins[i] == T;
    SimState st = initial_state(s);
    return step(s, st, in).at("o");
  };

  Actor r3 = make_res(3, "r");
  r3.res_param = false;
  CHECK(fire(r3, {T, D, D}));
  CHECK(fire(r3, {D, T, D}));  // symmetric
  CHECK(fire(r3, {D, D, T}));
  Actor r2 = make_res(2, "r");
  r2.res_param = false;
  CHECK_FALSE(fire(r2, {D, D}));  // all dash -> parameter
  Actor r2t = make_res(2, "r");
  r2t.res_param = true;
  CHECK(fire(r2t, {D, D}));
}

TEST_CASE("resolution conflict raises at simulation time") {
  // true and false demands on the same cycle: if-then forwards true, a NOT
  // actor turns a second true into a false demand
  ActorSystem s;
  s.ext_inputs = {"x"};
  s.ext_outputs = {"o"};
  s.actors.push_back(make_highlevel(ActorKind::IfTB, "f1"));
  s.actors.push_back(make_highlevel(ActorKind::IfTB, "f2"));
  s.actors.push_back(make_gate(ActorKind::Not, 1, "n"));
  s.actors.push_back(make_res(2, "r"));
  s.actors[3].res_param = false;
  s.wires.push_back({{-1, "x"}, {0, "input"}});
  s.wires.push_back({{-1, "x"}, {1, "input"}});
  s.wires.push_back({{0, "output"}, {3, "input1"}});
  s.wires.push_back({{1, "output"}, {2, "in"}});
  s.wires.push_back({{2, "out"}, {3, "input2"}});
  s.wires.push_back({{3, "output"}, {-1, "o"}});
  SimState st = initial_state(s);
  CHECK_THROWS_AS(step(s, st, {{"x", true}}), ConflictAtRuntimeError);
  // no demand at all resolves to the parameter
  SimState st2 = initial_state(s);
  CHECK_FALSE(step(s, st2, {{"x", false}}).at("o"));
}

TEST_CASE("unresolved parameters are flagged when needed") {
  ActorSystem s;
  s.ext_inputs = {"x"};
  s.ext_outputs = {"o"};
  s.actors.push_back(make_highlevel(ActorKind::IfTB, "f"));
  s.actors.push_back(make_res(1, "r"));
  s.wires.push_back({{-1, "x"}, {0, "input"}});
  s.wires.push_back({{0, "output"}, {1, "input1"}});
  s.wires.push_back({{1, "output"}, {-1, "o"}});
  SimState st = initial_state(s);
  CHECK(step(s, st, {{"x", true}}).at("o"));  // demand present, parameter unused
  CHECK_THROWS_AS(step(s, st, {{"x", false}}), UnresolvedParameterError);
}
