#ifndef WBELL_WBELL_HPP
#define WBELL_WBELL_HPP

#include "wbell/boundaries.hpp"
#include "wbell/linalg.hpp"
#include "wbell/measures.hpp"
#include "wbell/scan.hpp"
#include "wbell/states.hpp"
#include "wbell/svg.hpp"
#include "wbell/types.hpp"

#endif // WBELL_WBELL_HPP
