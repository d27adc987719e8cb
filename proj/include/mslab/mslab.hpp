#ifndef MSLAB_MSLAB_HPP
#define MSLAB_MSLAB_HPP

#include "closed_form.hpp"
#include "correspondence.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "gh_solver.hpp"
#include "hyperspace.hpp"
#include "io.hpp"
#include "metric_space.hpp"
#include "rational.hpp"
#include "realization.hpp"
#include "subset.hpp"

#endif // MSLAB_MSLAB_HPP
