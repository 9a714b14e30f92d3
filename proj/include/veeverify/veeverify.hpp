#ifndef VEEVERIFY_VEEVERIFY_HPP
#define VEEVERIFY_VEEVERIFY_HPP

#include "veeverify/configuration.hpp"
#include "veeverify/error.hpp"
#include "veeverify/families.hpp"
#include "veeverify/field.hpp"
#include "veeverify/identity.hpp"
#include "veeverify/io.hpp"
#include "veeverify/matrix.hpp"
#include "veeverify/numeric.hpp"
#include "veeverify/report.hpp"
#include "veeverify/run.hpp"
#include "veeverify/wdvv.hpp"

#endif  // VEEVERIFY_VEEVERIFY_HPP
