"""
Shared plumbing for the forecasting management commands.

Exit codes: 0 success, 1 usage or validation error, 2 data error.
"""

import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from ..exceptions import ForecastingError

logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_DATA = 2

# argparse exits with 2 on usage errors
ARGPARSE_USAGE_EXIT = 2


class SarimaCommand(BaseCommand):
    """BaseCommand with form validation, data-error mapping and file/stdout output"""

    def run_from_argv(self, argv):
        # Parse once up front so argparse usage errors exit with EXIT_USAGE
        self._called_from_command_line = True
        parser = self.create_parser(argv[0], argv[1])
        try:
            parser.parse_args(argv[2:])
        except SystemExit as exc:
            if exc.code == ARGPARSE_USAGE_EXIT:
                raise SystemExit(EXIT_USAGE)
            raise
        super().run_from_argv(argv)

    def handle(self, *args, **options):
        try:
            self.run(*args, **options)
        except ForecastingError as e:
            logger.error(f"{self.__module__.rsplit('.', 1)[-1]} failed: {e}")
            raise CommandError(str(e), returncode=EXIT_DATA)

    def run(self, *args, **options):
        raise NotImplementedError('subclasses of SarimaCommand must provide a run() method')

    def validate(self, form_class, data):
        """Bound and validated form, or a one-line usage error"""
        form = form_class(data=data)
        if not form.is_valid():
            problems = '; '.join(
                f"{field}: {' '.join(messages)}" if field != '__all__' else ' '.join(messages)
                for field, messages in form.errors.items()
            )
            raise CommandError(f"invalid arguments: {problems}", returncode=EXIT_USAGE)
        return form

    def usage_error(self, message):
        return CommandError(message, returncode=EXIT_USAGE)

    def emit(self, text, output=None):
        """Write command output to a file, or to stdout"""
        if output:
            Path(output).write_text(text)
        else:
            self.stdout.write(text, ending='')
