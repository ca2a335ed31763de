"""Exact enveloping sieve for primes and checks of prime exponential-sum inequalities."""
