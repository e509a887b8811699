"""Exact integrals I(n, m) = int_0^1 x^n (1-x)^m e^x dx, the continued
fraction of e, certified approximations of e, and the pi-integral family
int_0^1 x^n (1-x)^m (a + b x + c x^2) / (1 + x^2) dx."""

__version__ = "0.1.0"
