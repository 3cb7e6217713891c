"""Euler's generalized factorial a(a+b)(a+2b)...(a+(i-1)b) and its constant A."""
