"""
Main entry point for the command-line application.

Run ``python main.py --help`` or use the installed ``cubechains`` script.
"""

from app.main import run

if __name__ == "__main__":
    run()
