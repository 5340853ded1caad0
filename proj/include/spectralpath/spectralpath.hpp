#pragma once

#include <spectralpath/digraph.hpp>
#include <spectralpath/errors.hpp>
#include <spectralpath/matrix.hpp>
#include <spectralpath/matrix_io.hpp>
#include <spectralpath/polynomial.hpp>
#include <spectralpath/property_suites.hpp>
#include <spectralpath/scheme.hpp>
#include <spectralpath/scheme_eigen.hpp>
#include <spectralpath/scheme_io.hpp>
#include <spectralpath/spectra.hpp>
#include <spectralpath/sym_eigen.hpp>
#include <spectralpath/symmetrize.hpp>
#include <spectralpath/theorems.hpp>
#include <spectralpath/tolerance.hpp>
