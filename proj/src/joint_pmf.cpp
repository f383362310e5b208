#include "repstring/joint_pmf.hpp"

#include <cmath>
#include <ostream>

#include "repstring/csv.hpp"
#include "repstring/errors.hpp"
#include "repstring/kernels.hpp"

namespace repstring {

JointPmf::JointPmf(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw Error("joint pmf needs at least one axis");
  std::size_t cells = 1;
  for (const auto& ax : axes_) {
    if (ax.atoms.empty()) throw Error("axis with no atoms: " + ax.name);
    cells *= ax.atoms.size();
  }
  strides_.resize(axes_.size());
  std::size_t s = 1;
  for (std::size_t a = axes_.size(); a-- > 0;) {
    strides_[a] = s;
    s *= axes_[a].atoms.size();
  }
  table_.assign(cells, 0.0);
}

std::size_t JointPmf::flat_index(std::span<const int> atom_idx) const {
  if (atom_idx.size() != axes_.size()) throw Error("atom tuple arity mismatch");
  std::size_t flat = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    int i = atom_idx[a];
    if (i < 0 || static_cast<std::size_t>(i) >= axes_[a].atoms.size()) {
      throw Error("atom index out of range on axis " + axes_[a].name);
    }
    flat += strides_[a] * static_cast<std::size_t>(i);
  }
  return flat;
}

double JointPmf::total_mass() const {
  return kernels::ops().sum(table_.data(), table_.size());
}

void JointPmf::validate(double tol) const {
  for (double p : table_) {
    if (p < -tol || !std::isfinite(p)) throw Error("negative or non-finite cell");
  }
  if (mass_deficit_ < -tol) throw Error("negative mass deficit");
  double total = total_mass() + mass_deficit_;
  if (std::fabs(total - 1.0) > tol) {
    throw Error("table mass " + std::to_string(total) + " differs from 1");
  }
}

JointPmf JointPmf::marginal(std::span<const int> keep_axes) const {
  std::vector<Axis> axes;
  for (std::size_t i = 0; i < keep_axes.size(); ++i) {
    int a = keep_axes[i];
    if (a < 0 || a >= num_axes()) throw Error("marginal axis out of range");
    if (i > 0 && keep_axes[i] <= keep_axes[i - 1]) {
      throw Error("marginal axes must be strictly increasing");
    }
    axes.push_back(axes_[static_cast<std::size_t>(a)]);
  }
  JointPmf out(std::move(axes));
  std::vector<double> comp(out.table_.size(), 0.0);
  std::vector<int> idx(axes_.size(), 0);
  for (std::size_t flat = 0; flat < table_.size(); ++flat) {
    std::size_t rem = flat;
    std::size_t out_flat = 0;
    std::size_t k = 0;
    for (std::size_t a = 0; a < axes_.size(); ++a) {
      std::size_t i = rem / strides_[a];
      rem %= strides_[a];
      if (k < keep_axes.size() && static_cast<int>(a) == keep_axes[k]) {
        out_flat += out.strides_[k] * i;
        ++k;
      }
    }
    // per-cell Neumaier
    double s = out.table_[out_flat];
    double x = table_[flat];
    double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
      comp[out_flat] += (s - t) + x;
    } else {
      comp[out_flat] += (x - t) + s;
    }
    out.table_[out_flat] = t;
  }
  for (std::size_t i = 0; i < out.table_.size(); ++i) out.table_[i] += comp[i];
  out.mass_deficit_ = mass_deficit_;
  (void)idx;
  return out;
}

JointPmf JointPmf::merge_atoms(int axis, std::span<const int> group_of,
                               std::vector<std::string> coarse_atoms) const {
  if (axis < 0 || axis >= num_axes()) throw Error("merge axis out of range");
  const Axis& old_ax = axes_[static_cast<std::size_t>(axis)];
  if (group_of.size() != old_ax.atoms.size()) throw Error("group map size mismatch");
  std::vector<Axis> axes = axes_;
  axes[static_cast<std::size_t>(axis)] = Axis{old_ax.name, std::move(coarse_atoms)};
  JointPmf out(std::move(axes));
  for (std::size_t flat = 0; flat < table_.size(); ++flat) {
    std::size_t rem = flat;
    std::size_t out_flat = 0;
    for (std::size_t a = 0; a < axes_.size(); ++a) {
      std::size_t i = rem / strides_[a];
      rem %= strides_[a];
      std::size_t j = (static_cast<int>(a) == axis)
                          ? static_cast<std::size_t>(group_of[i])
                          : i;
      out_flat += out.strides_[a] * j;
    }
    out.table_[out_flat] += table_[flat];
  }
  out.mass_deficit_ = mass_deficit_;
  return out;
}

JointPmf JointPmf::permuted(std::span<const int> new_order) const {
  if (new_order.size() != axes_.size()) throw Error("permutation arity mismatch");
  std::vector<Axis> axes;
  for (int a : new_order) axes.push_back(axes_[static_cast<std::size_t>(a)]);
  JointPmf out(std::move(axes));
  for (std::size_t flat = 0; flat < table_.size(); ++flat) {
    std::size_t rem = flat;
    std::size_t out_flat = 0;
    for (std::size_t a = 0; a < axes_.size(); ++a) {
      std::size_t i = rem / strides_[a];
      rem %= strides_[a];
      for (std::size_t k = 0; k < new_order.size(); ++k) {
        if (new_order[k] == static_cast<int>(a)) {
          out_flat += out.strides_[k] * i;
          break;
        }
      }
    }
    out.table_[out_flat] = table_[flat];
  }
  out.mass_deficit_ = mass_deficit_;
  return out;
}

JointPmf JointPmf::renamed(std::vector<std::string> axis_names) const {
  if (axis_names.size() != axes_.size()) throw Error("rename arity mismatch");
  JointPmf out = *this;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    out.axes_[a].name = std::move(axis_names[a]);
  }
  return out;
}

void JointPmf::write_csv(std::ostream& os) const {
  for (const auto& ax : axes_) os << csv_escape(ax.name) << ',';
  os << "probability\n";
  for (std::size_t flat = 0; flat < table_.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t a = 0; a < axes_.size(); ++a) {
      std::size_t i = rem / strides_[a];
      rem %= strides_[a];
      os << csv_escape(axes_[a].atoms[i]) << ',';
    }
    os << format_number(table_[flat]) << '\n';
  }
  for (std::size_t a = 0; a < axes_.size(); ++a) os << "OVERFLOW,";
  os << format_number(mass_deficit_) << '\n';
}

JointPmf tensor_product(const JointPmf& a, const JointPmf& b) {
  std::vector<Axis> axes = a.axes();
  for (const auto& ax : b.axes()) axes.push_back(ax);
  JointPmf out(std::move(axes));
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  std::size_t nb = b.num_cells();
  for (std::size_t i = 0; i < a.num_cells(); ++i) {
    for (std::size_t j = 0; j < nb; ++j) po[i * nb + j] = pa[i] * pb[j];
  }
  // deficits compose like an absorbing atom pair
  out.add_mass_deficit(a.mass_deficit() + b.mass_deficit() -
                       a.mass_deficit() * b.mass_deficit());
  return out;
}

}  // namespace repstring
