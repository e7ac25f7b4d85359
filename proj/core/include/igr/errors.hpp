#pragma once

#include <stdexcept>
#include <string>

namespace igr {

// A field value left its physical domain (rho <= 0 or eps <= 0) during a run.
// Carries enough context to report where and when the state went bad.
class PositivityError : public std::runtime_error {
 public:
  PositivityError(std::string field, int cell, double time)
      : std::runtime_error("positivity failure: " + field + " <= 0 in cell " +
                           std::to_string(cell) + " at t = " + std::to_string(time)),
        field_(std::move(field)),
        cell_(cell),
        time_(time) {}

  const std::string& field() const { return field_; }
  int cell() const { return cell_; }
  double time() const { return time_; }

  int stage() const { return stage_; }
  void set_stage(int stage) { stage_ = stage; }

 private:
  std::string field_;
  int cell_;
  double time_;
  int stage_ = -1;  // SSPRK3 stage index when aborted mid-step
};

// Linear solver did not reach the requested residual.
class SolverError : public std::runtime_error {
 public:
  SolverError(std::string what, int iterations, double residual)
      : std::runtime_error(std::move(what) + " (iterations = " + std::to_string(iterations) +
                           ", residual = " + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

  int stage() const { return stage_; }
  void set_stage(int stage) { stage_ = stage; }

 private:
  int iterations_;
  double residual_;
  int stage_ = -1;
};

}  // namespace igr
