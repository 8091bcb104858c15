#! /usr/bin/env python3
"""
Construct and verify the tiles, odometers and Laplacian patterns of the
Apollonian band packing.

"""
from apollonite.cli import main


if __name__ == '__main__':
    main()
