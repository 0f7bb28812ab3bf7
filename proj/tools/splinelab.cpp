#include <splinelab/io.hpp>
#include <splinelab/builders.hpp>
#include <splinelab/hilbertfit.hpp>
#include <splinelab/colonlab.hpp>
int main() { return 0; }
