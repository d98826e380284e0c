'''
Tests for the job callbacks
'''
import asyncio
import logging
from typing import List
import pytest

from pyconlmc.callback import JobCallback


async def test_sync_callback() -> None:
    '''
    Verifies a plain function is run as a task with the arguments given.
    '''
    calls: List[int] = []
    task = JobCallback.invoke(calls.append, 5)
    assert task is not None
    await task
    assert calls == [5]


async def test_async_callback() -> None:
    '''
    Verifies a coroutine function is run as a task.
    '''
    calls: List[str] = []

    async def callback(value: str, suffix: str = '') -> None:
        await asyncio.sleep(0)
        calls.append(value + suffix)

    task = JobCallback.invoke(callback, 'done', suffix='!')
    assert task is not None
    await task
    assert calls == ['done!']


async def test_no_callback() -> None:
    '''
    Verifies nothing is scheduled without a callback.
    '''
    assert JobCallback.invoke(None, 1) is None


async def test_failing_callback(caplog: pytest.LogCaptureFixture) -> None:
    '''
    Verifies exceptions of callbacks are logged rather than propagated.
    '''
    def callback() -> None:
        raise ValueError('broken')

    with caplog.at_level(logging.ERROR, logger='pyconlmc.callback'):
        task = JobCallback.invoke(callback)
        assert task is not None
        await asyncio.gather(task, return_exceptions=True)
        await asyncio.sleep(0)
    assert "Job callback 'test_failing_callback.<locals>.callback(...)'" \
        in caplog.text
