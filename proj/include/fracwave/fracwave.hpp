/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_FRACWAVE_HPP
#define FRACWAVE_FRACWAVE_HPP

#include "fracwave/asymptotics.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/grid.hpp"
#include "fracwave/groundstate.hpp"
#include "fracwave/io.hpp"
#include "fracwave/kernel.hpp"
#include "fracwave/params.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/spectral.hpp"
#include "fracwave/tailfit.hpp"
#include "fracwave/verify.hpp"

#endif
