"""Linear differential operators on Laurent series and the exact ODE checks."""
