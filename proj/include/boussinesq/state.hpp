#pragma once

#include "boussinesq/field.hpp"

namespace boussinesq {

/// Physical parameters of the (mollified) Boussinesq system.
struct PhysicalParams {
  double kappa = 0.01;       ///< thermal diffusivity, > 0
  double nu = 0.01;          ///< viscosity, >= 0 (0 only for the inviscid-momentum limit)
  bool buoyancy_on = true;   ///< switch for the (0, theta) forcing
  double delta = 0.0;        ///< mollification scale; 0 means the unmollified system

  /// Throws ParameterError on kappa <= 0, nu < 0, delta < 0 or non-finite input.
  void validate() const;
};

/// Temperature, velocity and time of one solution snapshot.
struct State {
  ScalarField theta;
  VectorField u;
  double t = 0.0;
};

}  // namespace boussinesq
