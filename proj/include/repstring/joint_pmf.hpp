#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace repstring {

struct Axis {
  std::string name;
  std::vector<std::string> atoms;
};

// Exact probability table over a finite product of coordinate spaces, dense
// row-major (last axis fastest). mass_deficit carries the probability of
// realizations the table cannot represent (raw gaps past the cap); it is
// reported, never silently renormalized away.
class JointPmf {
 public:
  explicit JointPmf(std::vector<Axis> axes);

  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t num_cells() const { return table_.size(); }
  int num_axes() const { return static_cast<int>(axes_.size()); }

  std::size_t flat_index(std::span<const int> atom_idx) const;
  double at(std::span<const int> atom_idx) const { return table_[flat_index(atom_idx)]; }
  void add(std::span<const int> atom_idx, double p) { table_[flat_index(atom_idx)] += p; }
  void add_flat(std::size_t flat, double p) { table_[flat] += p; }

  const double* data() const { return table_.data(); }
  double* data() { return table_.data(); }
  std::span<const double> cells() const { return table_; }

  double mass_deficit() const { return mass_deficit_; }
  void add_mass_deficit(double p) { mass_deficit_ += p; }

  double total_mass() const;  // cells only, excludes the deficit
  // entries >= 0 and total + deficit = 1 within tol
  void validate(double tol = 1e-10) const;

  // Sum out every axis not listed (keep order as given; must be increasing).
  JointPmf marginal(std::span<const int> keep_axes) const;

  // Coarsen one axis: group_of[a] names the destination atom of atom a in the
  // provided coarser atom list.
  JointPmf merge_atoms(int axis, std::span<const int> group_of,
                       std::vector<std::string> coarse_atoms) const;

  // Reorder axes (a permutation); cell contents move accordingly.
  JointPmf permuted(std::span<const int> new_order) const;

  JointPmf renamed(std::vector<std::string> axis_names) const;

  // CSV: header, one row per atom tuple, trailing OVERFLOW row with the deficit.
  void write_csv(std::ostream& os) const;

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::vector<double> table_;
  double mass_deficit_ = 0.0;
};

// Independent product of two tables (axes concatenated).
JointPmf tensor_product(const JointPmf& a, const JointPmf& b);

}  // namespace repstring
