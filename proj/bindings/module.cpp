#include <pybind11/pybind11.h>

PYBIND11_MODULE(_hpgpull, m) { m.doc() = "placeholder"; }
