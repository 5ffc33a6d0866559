#pragma once

#include "entx/dynamics.hpp"
#include "entx/ensemble.hpp"
#include "entx/entropy.hpp"
#include "entx/hilbert.hpp"
#include "entx/models.hpp"
#include "entx/random.hpp"
