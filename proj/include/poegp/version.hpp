#pragma once

#define POEGP_VERSION "0.1.0"
