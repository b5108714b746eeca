import argparse

from django.core.management.base import BaseCommand, CommandError

from tssforge.cli import run


class Command(BaseCommand):
    help = 'Runs a tssforge verb, for example "tssforge bounds --theorem 1 --n 8".'

    def add_arguments(self, parser):
        parser.add_argument('argv', nargs=argparse.REMAINDER)

    def handle(self, *args, **options):
        status = run(options['argv'], stdout=self.stdout, stderr=self.stderr)
        if status:
            raise CommandError('tssforge exited with status %d' % status, returncode=status)
