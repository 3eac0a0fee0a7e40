"""
Steiner Tree Solver
Main entry point.

Runs the command line defined in steinertreesolver.cli:
    python app.py solve instance.stp --variant O --time 10
    python app.py generate grid --nx 10 --ny 10 --terminals 5 -o grid.stp
    python app.py compare x.csv y.csv
"""
from steinertreesolver.cli import main

if __name__ == "__main__":
    main()
