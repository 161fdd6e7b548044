"""
The `effsec` front-end: dispatches to the analysis commands only.

Exit codes: 0 the property holds, 1 it is violated, 2 usage or input error,
3 a search budget was exceeded, 4 an internal cross-check failed.
"""
import logging
import os
import sys

logger = logging.getLogger(__name__)

EXIT_HOLDS = 0
EXIT_VIOLATED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

ANALYSIS_COMMANDS = (
    'validate',
    'ni',
    'rstar',
    'idealize',
    'solve',
    'effsec',
    'compare',
    'create_sample_networks',
)

HELP_FLAGS = ('help', '-h', '--help')


def usage(prog='effsec'):
    lines = [f"Usage: {prog} <command> [options]", '', 'Commands:']
    lines.extend(f"    {name}" for name in ANALYSIS_COMMANDS)
    lines.append('')
    lines.append(f"Run '{prog} <command> --help' for the options of a command.")
    return '\n'.join(lines)


def main(argv=None):
    argv = list(sys.argv if argv is None else argv)
    prog = os.path.basename(argv[0]) if argv else 'effsec'

    if len(argv) < 2:
        sys.stderr.write(usage(prog) + '\n')
        sys.exit(EXIT_INPUT)
    command = argv[1]
    if command in HELP_FLAGS:
        sys.stdout.write(usage(prog) + '\n')
        return
    if command not in ANALYSIS_COMMANDS:
        sys.stderr.write(f"Unknown command: '{command}'\n{usage(prog)}\n")
        sys.exit(EXIT_INPUT)

    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'effective_security.settings')
    from django.core.management import execute_from_command_line

    try:
        execute_from_command_line([prog] + argv[1:])
    except Exception:
        logger.exception(f"{command} crashed")
        sys.exit(EXIT_INTERNAL)
