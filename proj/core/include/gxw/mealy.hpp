#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gxw {

/// Three-valued port value. Undefined is an intra-cycle scheduling state and
/// never crosses a cycle boundary; Dash means "either Boolean is acceptable".
enum class PortValue : uint8_t { Undefined, False, True, Dash };

std::string port_value_str(PortValue v);

/// Boolean expression over machine inputs and state bits.
struct BExpr;
using BExprPtr = std::shared_ptr<const BExpr>;

struct BExpr {
  enum class Op { False, True, Input, StateBit, Not, And, Or };
  Op op = Op::False;
  int index = 0;  // input index or state bit index
  std::vector<BExprPtr> kids;

  static BExprPtr f();
  static BExprPtr t();
  static BExprPtr input(int i);
  static BExprPtr state_bit(int i);
  static BExprPtr neg(BExprPtr a);
  static BExprPtr conj(std::vector<BExprPtr> xs);  // empty -> true
  static BExprPtr disj(std::vector<BExprPtr> xs);  // empty -> false

  bool eval(const std::vector<bool>& inputs, const std::vector<bool>& state) const;
};

/// State variable descriptor. Three-valued variables occupy two bits
/// (known, value); unknown is known=0.
struct StateVar {
  std::string name;
  bool three_valued = false;
};

/// An output port: the pair (t, f) of conditions. t and f never hold
/// together; when neither holds the port emits Dash.
struct MealyOutput {
  std::string port;
  BExprPtr t;
  BExprPtr f;
};

/// Explicit transition table over reachable states, used for machines read
/// back from a netlist and for product machines.
struct MealyTable {
  int num_inputs = 0;
  std::vector<std::string> output_ports;
  std::vector<std::vector<bool>> states;        // bit patterns, index 0 = initial
  std::vector<std::vector<PortValue>> outputs;  // [state * 2^in + mask][port]
  std::vector<uint32_t> next;                   // [state * 2^in + mask] -> state index

  bool operator==(const MealyTable&) const = default;
};

/// Deterministic Mealy machine with three-valued outputs. Behavior is either
/// symbolic (expressions per output / next state bit) or an explicit table.
struct MealyMachine {
  std::vector<StateVar> vars;
  std::vector<std::string> inputs;

  // symbolic form
  std::vector<bool> init_bits;
  std::vector<MealyOutput> outputs;
  std::vector<BExprPtr> next_bits;  // one per state bit

  // table form (used when `table` is set; vars/init_bits describe the bits)
  std::optional<MealyTable> table;

  int num_bits() const;
  int bit_index(const std::string& var_name) const;  // first bit of the variable
  int three_valued_var_count() const;

  std::vector<bool> initial_state() const;

  /// One synchronous step: inputs are Boolean, outputs three-valued.
  void step(const std::vector<bool>& in_vals, std::vector<bool>& state,
            std::vector<PortValue>& out_vals) const;

  std::vector<std::string> output_ports() const;

  /// Enumerates reachable states into a canonical table (BFS from the
  /// initial state, inputs in ascending mask order). Guarded against state
  /// explosion.
  MealyTable enumerate_table(size_t max_states = (1u << 20)) const;

  static MealyMachine from_table(std::vector<StateVar> vars, std::vector<std::string> inputs,
                                 MealyTable table);

  /// Structural equality modulo representation: compares canonical tables.
  bool equivalent_structure(const MealyMachine& other) const;
};

}  // namespace gxw
