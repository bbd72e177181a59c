// qadj.hpp — umbrella header

#pragma once

#include "qadj/algebra.hpp"
#include "qadj/core.hpp"
#include "qadj/dynamics.hpp"
#include "qadj/jordan.hpp"
#include "qadj/models.hpp"
#include "qadj/spectral.hpp"
